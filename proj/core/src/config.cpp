#include "bec2/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

#include "bec2/bessel.hpp"
#include "bec2/output.hpp"
#include "bec2/raman_nath.hpp"

namespace bec2 {

namespace {

using Json = nlohmann::ordered_json;

struct Collector {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  void fail(const std::string& msg) { violations.push_back(msg); }
};

bool finite_number(const Json& v) { return v.is_number() && std::isfinite(v.get<double>()); }

void check_keys(const Json& obj, const std::string& path,
                std::initializer_list<const char*> allowed, Collector& c) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) c.fail(path + ": unknown key \"" + item.key() + "\"");
  }
}

double get_number(const Json& obj, const char* key, const std::string& path, Collector& c,
                  bool required, double fallback) {
  if (!obj.contains(key)) {
    if (required) c.fail(path + "." + key + " is required");
    return fallback;
  }
  const Json& v = obj.at(key);
  if (!finite_number(v)) {
    c.fail(path + "." + key + " must be a finite number");
    return fallback;
  }
  return v.get<double>();
}

int get_integer(const Json& obj, const char* key, const std::string& path, Collector& c,
                int fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) {
    c.fail(path + "." + key + " must be an integer");
    return fallback;
  }
  return v.get<int>();
}

bool get_boolean(const Json& obj, const char* key, const std::string& path, Collector& c,
                 bool fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_boolean()) {
    c.fail(path + "." + key + " must be a boolean");
    return fallback;
  }
  return v.get<bool>();
}

std::string get_string(const Json& obj, const char* key, const std::string& path,
                       Collector& c, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_string()) {
    c.fail(path + "." + key + " must be a string");
    return fallback;
  }
  return v.get<std::string>();
}

Species parse_species(const Json& obj, int index, Collector& c) {
  const std::string path = "species[" + std::to_string(index) + "]";
  Species s;
  if (!obj.is_object()) {
    c.fail(path + " must be an object");
    return s;
  }
  check_keys(obj, path, {"mass", "detuning", "dipole_moment", "group_velocity", "peak_rabi"},
             c);
  s.mass = get_number(obj, "mass", path, c, true, 1.0);
  s.detuning = get_number(obj, "detuning", path, c, true, 1.0);
  s.dipole_moment = get_number(obj, "dipole_moment", path, c, false, 0.0);
  s.group_velocity = get_number(obj, "group_velocity", path, c, false, 1.0);
  s.peak_rabi = get_number(obj, "peak_rabi", path, c, false, 0.0);
  return s;
}

// Raw user-unit fields as parsed, before conversion and derivation.
struct RawConfig {
  UnitSystem units;
  std::array<Species, 2> species{};
  std::array<double, 2> densities{0.0, 0.0};
  std::array<double, 2> eps{0.0, 0.0};
  bool use_eps = false;
  double envelope_width = 1.0;
  double vacuum_wavenumber = 1.0;
  std::optional<double> index_override;
  GridConfig grid;
  PacketConfig packet;  // width/center in user units here
  EvolveSettings evolve;
  std::optional<int> max_order;
  OutputConfig output;
  std::optional<SweepConfig> sweep;
};

RawConfig parse_raw(const Json& root, Collector& c) {
  RawConfig r;
  if (!root.is_object()) {
    c.fail("top level must be a JSON object");
    return r;
  }
  check_keys(root, "config",
             {"units", "species", "mixture", "field", "grid", "packet", "evolve",
              "diffraction", "output", "sweep"},
             c);

  if (root.contains("species") && root.at("species").is_array() &&
      root.at("species").size() == 2) {
    for (int j = 0; j < 2; ++j) r.species[j] = parse_species(root.at("species")[j], j, c);
  } else {
    c.fail("species must be an array of exactly 2 objects");
  }

  double default_ref_freq = 1.0;
  bool have_default_ref_freq = false;
  if (std::isfinite(r.species[0].mass) && r.species[0].mass > 0.0) {
    // Recoil frequency of species 1 at the reference wavenumber, the
    // conventional frequency scale.
    have_default_ref_freq = true;
  }
  if (root.contains("units")) {
    const Json& u = root.at("units");
    if (!u.is_object()) {
      c.fail("units must be an object");
    } else {
      check_keys(u, "units", {"reference_wavenumber", "reference_frequency"}, c);
      r.units.reference_wavenumber =
          get_number(u, "reference_wavenumber", "units", c, false, 1.0);
      if (have_default_ref_freq) {
        default_ref_freq =
            r.units.reference_wavenumber * r.units.reference_wavenumber /
            (2.0 * r.species[0].mass);
      }
      r.units.reference_frequency =
          get_number(u, "reference_frequency", "units", c, false, default_ref_freq);
    }
  } else {
    if (have_default_ref_freq) {
      default_ref_freq = 1.0 / (2.0 * r.species[0].mass);
    }
    r.units.reference_frequency = default_ref_freq;
  }

  if (root.contains("mixture")) {
    const Json& m = root.at("mixture");
    if (!m.is_object()) {
      c.fail("mixture must be an object");
    } else {
      check_keys(m, "mixture", {"densities", "eps"}, c);
      const bool has_rho = m.contains("densities");
      const bool has_eps = m.contains("eps");
      auto read_pair = [&](const char* key, std::array<double, 2>& out) {
        const Json& a = m.at(key);
        if (!a.is_array() || a.size() != 2 || !finite_number(a[0]) || !finite_number(a[1])) {
          c.fail("mixture." + std::string(key) + " must be an array of 2 finite numbers");
          return;
        }
        out = {a[0].get<double>(), a[1].get<double>()};
      };
      if (has_rho) read_pair("densities", r.densities);
      if (has_eps) read_pair("eps", r.eps);
      r.use_eps = has_eps;
      if (has_rho && has_eps) {
        c.warnings.push_back(
            "mixture: both densities and eps given; eps takes precedence and the "
            "densities entry is ignored");
      }
    }
  }

  if (root.contains("field") && root.at("field").is_object()) {
    const Json& f = root.at("field");
    check_keys(f, "field", {"envelope_width", "vacuum_wavenumber", "index_override"}, c);
    r.envelope_width = get_number(f, "envelope_width", "field", c, true, 1.0);
    r.vacuum_wavenumber =
        get_number(f, "vacuum_wavenumber", "field", c, false, r.units.reference_wavenumber);
    if (f.contains("index_override")) {
      const double v = get_number(f, "index_override", "field", c, false, 1.0);
      if (!(v > 0.0) || !std::isfinite(v)) {
        c.fail("field.index_override must be a positive finite number");
      } else {
        r.index_override = v;
      }
    }
  } else {
    c.fail("field must be an object with at least envelope_width");
  }

  if (root.contains("grid")) {
    const Json& g = root.at("grid");
    if (!g.is_object()) {
      c.fail("grid must be an object");
    } else {
      check_keys(g, "grid", {"n_points", "periods"}, c);
      r.grid.n_points = get_integer(g, "n_points", "grid", c, 1024);
      r.grid.periods = get_integer(g, "periods", "grid", c, 8);
    }
  }
  if (!is_power_of_two(r.grid.n_points) || r.grid.n_points < 16) {
    c.fail("grid.n_points must be a power of two >= 16, got " +
           std::to_string(r.grid.n_points));
  }
  if (r.grid.periods < 1) {
    c.fail("grid.periods must be >= 1, got " + std::to_string(r.grid.periods));
  }

  if (root.contains("packet")) {
    const Json& p = root.at("packet");
    if (!p.is_object()) {
      c.fail("packet must be an object");
    } else {
      check_keys(p, "packet", {"shape", "width", "center", "path"}, c);
      const std::string shape = get_string(p, "shape", "packet", c, "uniform");
      if (shape == "uniform") {
        r.packet.shape = PacketShape::uniform;
      } else if (shape == "gaussian") {
        r.packet.shape = PacketShape::gaussian;
      } else if (shape == "file") {
        r.packet.shape = PacketShape::file;
      } else {
        c.fail("packet.shape must be uniform, gaussian or file, got \"" + shape + "\"");
      }
      r.packet.width = get_number(p, "width", "packet", c,
                                  r.packet.shape == PacketShape::gaussian, 0.0);
      r.packet.center = get_number(p, "center", "packet", c, false, 0.0);
      r.packet.path = get_string(p, "path", "packet", c, "");
      if (r.packet.shape == PacketShape::gaussian &&
          !(r.packet.width > 0.0 && std::isfinite(r.packet.width))) {
        c.fail("packet.width must be positive for gaussian packets");
      }
      if (r.packet.shape == PacketShape::file && r.packet.path.empty()) {
        c.fail("packet.path is required for file packets");
      }
    }
  }

  if (root.contains("evolve")) {
    const Json& e = root.at("evolve");
    if (!e.is_object()) {
      c.fail("evolve must be an object");
    } else {
      check_keys(e, "evolve", {"steps", "mode", "kinetic", "z_span", "observer_stride"}, c);
      r.evolve.steps = get_integer(e, "steps", "evolve", c, 2000);
      const std::string mode = get_string(e, "mode", "evolve", c, "full");
      if (mode == "full") {
        r.evolve.mode = PotentialMode::full;
      } else if (mode == "expanded") {
        r.evolve.mode = PotentialMode::expanded;
      } else {
        c.fail("evolve.mode must be full or expanded, got \"" + mode + "\"");
      }
      r.evolve.kinetic = get_boolean(e, "kinetic", "evolve", c, true);
      r.evolve.z_span = get_number(e, "z_span", "evolve", c, false, 6.0);
      r.evolve.observer_stride = get_integer(e, "observer_stride", "evolve", c, 0);
    }
  }
  if (r.evolve.steps < 0) c.fail("evolve.steps must be >= 0");
  if (!(r.evolve.z_span > 0.0) || !std::isfinite(r.evolve.z_span)) {
    c.fail("evolve.z_span must be positive");
  }
  if (r.evolve.observer_stride < 0) c.fail("evolve.observer_stride must be >= 0");
  if (r.evolve.observer_stride == 0) {
    r.evolve.observer_stride = std::max(1, r.evolve.steps / 100);
  }

  if (root.contains("diffraction")) {
    const Json& d = root.at("diffraction");
    if (!d.is_object()) {
      c.fail("diffraction must be an object");
    } else {
      check_keys(d, "diffraction", {"max_order"}, c);
      if (d.contains("max_order")) {
        const int q = get_integer(d, "max_order", "diffraction", c, 0);
        if (q < 0) {
          c.fail("diffraction.max_order must be >= 0");
        } else {
          r.max_order = q;
        }
      }
    }
  }

  if (root.contains("output")) {
    const Json& o = root.at("output");
    if (!o.is_object()) {
      c.fail("output must be an object");
    } else {
      check_keys(o, "output", {"dir", "table_format", "snapshot_format"}, c);
      r.output.dir = get_string(o, "dir", "output", c, "");
      const std::string tf = get_string(o, "table_format", "output", c, "csv");
      if (tf == "csv") {
        r.output.table_format = TableFormat::csv;
      } else if (tf == "json") {
        r.output.table_format = TableFormat::json;
      } else {
        c.fail("output.table_format must be csv or json, got \"" + tf + "\"");
      }
      const std::string sf = get_string(o, "snapshot_format", "output", c, "csv");
      if (sf == "csv") {
        r.output.snapshot_format = SnapshotFormat::csv;
      } else if (sf == "binary") {
        r.output.snapshot_format = SnapshotFormat::binary;
      } else {
        c.fail("output.snapshot_format must be csv or binary, got \"" + sf + "\"");
      }
    }
  }

  if (root.contains("sweep")) {
    const Json& s = root.at("sweep");
    if (!s.is_object()) {
      c.fail("sweep must be an object");
    } else {
      check_keys(s, "sweep", {"command", "parameter", "from", "to", "count"}, c);
      SweepConfig sw;
      sw.command = get_string(s, "command", "sweep", c, "");
      sw.parameter = get_string(s, "parameter", "sweep", c, "");
      sw.from = get_number(s, "from", "sweep", c, true, 0.0);
      sw.to = get_number(s, "to", "sweep", c, true, 0.0);
      sw.count = get_integer(s, "count", "sweep", c, 1);
      if (sw.command != "index" && sw.command != "chi" && sw.command != "diffract" &&
          sw.command != "simulate") {
        c.fail("sweep.command must be index, chi, diffract or simulate, got \"" +
               sw.command + "\"");
      }
      if (sw.parameter.empty() || sw.parameter[0] != '/') {
        c.fail("sweep.parameter must be a JSON pointer starting with '/'");
      }
      if (sw.count < 1) c.fail("sweep.count must be >= 1");
      r.sweep = sw;
    }
  }

  return r;
}

Json echo_json(const RawConfig& r) {
  Json root;
  root["units"] = {{"reference_wavenumber", r.units.reference_wavenumber},
                   {"reference_frequency", r.units.reference_frequency}};
  root["species"] = Json::array();
  for (int j = 0; j < 2; ++j) {
    const Species& s = r.species[j];
    root["species"].push_back({{"mass", s.mass},
                               {"detuning", s.detuning},
                               {"dipole_moment", s.dipole_moment},
                               {"group_velocity", s.group_velocity},
                               {"peak_rabi", s.peak_rabi}});
  }
  if (r.use_eps) {
    root["mixture"] = {{"eps", {r.eps[0], r.eps[1]}}};
  } else {
    root["mixture"] = {{"densities", {r.densities[0], r.densities[1]}}};
  }
  root["field"] = {{"envelope_width", r.envelope_width},
                   {"vacuum_wavenumber", r.vacuum_wavenumber}};
  if (r.index_override) root["field"]["index_override"] = *r.index_override;
  root["grid"] = {{"n_points", r.grid.n_points}, {"periods", r.grid.periods}};
  root["packet"] = Json::object();
  root["packet"]["shape"] = to_string(r.packet.shape);
  if (r.packet.shape == PacketShape::gaussian) {
    root["packet"]["width"] = r.packet.width;
    root["packet"]["center"] = r.packet.center;
  }
  if (r.packet.shape == PacketShape::file) root["packet"]["path"] = r.packet.path;
  root["evolve"] = {{"steps", r.evolve.steps},
                    {"mode", to_string(r.evolve.mode)},
                    {"kinetic", r.evolve.kinetic},
                    {"z_span", r.evolve.z_span},
                    {"observer_stride", r.evolve.observer_stride}};
  root["diffraction"] = {{"max_order", r.max_order ? *r.max_order : 0}};
  root["output"] = {{"dir", r.output.dir},
                    {"table_format", to_string(r.output.table_format)},
                    {"snapshot_format", to_string(r.output.snapshot_format)}};
  if (r.sweep) {
    root["sweep"] = {{"command", r.sweep->command},
                     {"parameter", r.sweep->parameter},
                     {"from", r.sweep->from},
                     {"to", r.sweep->to},
                     {"count", r.sweep->count}};
  }
  return root;
}

}  // namespace

std::string to_string(PacketShape s) {
  switch (s) {
    case PacketShape::uniform: return "uniform";
    case PacketShape::gaussian: return "gaussian";
    case PacketShape::file: return "file";
  }
  return "uniform";
}

std::string to_string(TableFormat f) {
  return f == TableFormat::json ? "json" : "csv";
}

std::string to_string(SnapshotFormat f) {
  return f == SnapshotFormat::binary ? "binary" : "csv";
}

std::string to_string(PotentialMode m) {
  return m == PotentialMode::expanded ? "expanded" : "full";
}

RunConfig parse_config_text(const std::string& text, const std::string& source_name) {
  Json root;
  try {
    root = Json::parse(text, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(source_name + ": " + e.what());
  }

  Collector c;
  RawConfig raw = parse_raw(root, c);
  if (!c.violations.empty()) {
    std::string what = source_name + ": invalid configuration:";
    for (const auto& v : c.violations) what += "\n  " + v;
    throw ValidationError(what, std::move(c.violations));
  }

  // Unit conversion. Field-level constraints (positive masses and widths,
  // nonzero detunings, ...) are checked here via to_internal.
  PhysicalParams user;
  user.species = raw.species;
  user.densities = raw.use_eps ? std::array<double, 2>{0.0, 0.0} : raw.densities;
  user.envelope_width = raw.envelope_width;
  user.vacuum_wavenumber = raw.vacuum_wavenumber;

  PhysicalParams internal;
  try {
    internal = to_internal(user, raw.units);
  } catch (const ValidationError& e) {
    std::vector<std::string> violations = e.violations();
    std::string what = source_name + ": invalid configuration:";
    for (const auto& v : violations) what += "\n  " + v;
    throw ValidationError(what, std::move(violations));
  }

  RunConfig rc;
  rc.units = raw.units;
  rc.mixture.species = internal.species;
  rc.mixture.densities = internal.densities;
  rc.envelope_width = internal.envelope_width;
  rc.vacuum_wavenumber = internal.vacuum_wavenumber;
  rc.index_override = raw.index_override;
  rc.grid = raw.grid;
  rc.packet = raw.packet;
  rc.evolve = raw.evolve;
  rc.output = raw.output;
  rc.sweep = raw.sweep;
  rc.warnings = c.warnings;

  const UnitScales scales = unit_scales(raw.units);
  rc.packet.width = raw.packet.width * scales.length;
  rc.packet.center = raw.packet.center * scales.length;

  // eps channel: densities derived from the internal polarizabilities.
  for (int j = 0; j < 2; ++j) {
    rc.derived.alpha[j] = polarizability(rc.mixture.species[j], j);
    rc.derived.eff_volume[j] = effective_volume(rc.mixture.species[j], j);
  }
  if (raw.use_eps) {
    std::vector<std::string> violations;
    for (int j = 0; j < 2; ++j) {
      const double eps = raw.eps[j];
      const double alpha = rc.derived.alpha[j];
      if (eps == 0.0) {
        rc.mixture.densities[j] = 0.0;
        continue;
      }
      if (alpha == 0.0) {
        violations.push_back("mixture.eps[" + std::to_string(j) +
                             "] is nonzero but species " + std::to_string(j + 1) +
                             " has zero polarizability (dipole_moment = 0)");
        continue;
      }
      const double rho = eps / alpha;
      if (rho < 0.0) {
        violations.push_back(
            "mixture.eps[" + std::to_string(j) + "] = " + format_double(eps) +
            " has the wrong sign for polarizability " + format_double(alpha) +
            " (density would be negative)");
        continue;
      }
      rc.mixture.densities[j] = rho;
    }
    if (!violations.empty()) {
      std::string what = source_name + ": invalid configuration:";
      for (const auto& v : violations) what += "\n  " + v;
      throw ValidationError(what, std::move(violations));
    }
  }

  // Medium response at the nominal densities.
  const MediumSample sample = MediumSample::from(rc.mixture);
  rc.derived.screening_sum = screening_sum(sample);
  for (int j = 0; j < 2; ++j) {
    rc.derived.eps[j] = rc.derived.alpha[j] * rc.mixture.densities[j];
  }
  try {
    rc.derived.chi = susceptibility(sample);
    const RefractiveIndex idx = refractive_index(sample);
    rc.derived.n_squared = idx.n_squared;
    rc.derived.evanescent = idx.evanescent;
    rc.derived.n = idx.evanescent ? 0.0 : idx.value.real();
  } catch (const SingularMediumError&) {
    rc.derived.singular = true;
    rc.derived.chi = std::numeric_limits<double>::quiet_NaN();
    rc.derived.n_squared = std::numeric_limits<double>::quiet_NaN();
    rc.derived.n = std::numeric_limits<double>::quiet_NaN();
  }

  const double p1 = rc.mixture.species[0].mass * rc.mixture.species[0].group_velocity;
  const double p2 = rc.mixture.species[1].mass * rc.mixture.species[1].group_velocity;
  rc.derived.components_separated = p1 != p2;

  double tau_max = 0.0;
  bool have_tau = false;
  try {
    FieldConfig f;
    f.vacuum_wavenumber = rc.vacuum_wavenumber;
    f.envelope_width = rc.envelope_width;
    f.refractive_index = 1.0;  // tau does not depend on it
    for (int j = 0; j < 2; ++j) {
      f.peak_rabi[j] = rc.mixture.species[j].peak_rabi;
      rc.derived.coupling[j] = coupling_strength(rc.mixture.species[j], f, j);
      rc.derived.tau[j] = tau_parameter(rc.derived.coupling[j], rc.mixture);
      tau_max = std::max(tau_max, std::abs(rc.derived.tau[j]));
    }
    have_tau = true;
  } catch (const Error&) {
    rc.derived.coupling = {std::numeric_limits<double>::quiet_NaN(),
                           std::numeric_limits<double>::quiet_NaN()};
    rc.derived.tau = rc.derived.coupling;
  }

  if (raw.max_order) {
    rc.max_order = *raw.max_order;
  } else if (have_tau && tau_max <= bessel_max_argument) {
    rc.max_order = default_max_order(tau_max);
  } else {
    rc.max_order = 20;
  }
  raw.max_order = rc.max_order;

  // Validity warnings that need the derived index.
  if (!rc.derived.singular && !rc.derived.evanescent && rc.derived.n > 0.0) {
    if (rc.packet.shape == PacketShape::gaussian) {
      const double threshold = wide_packet_threshold(rc.derived.n, rc.vacuum_wavenumber);
      if (rc.packet.width < threshold) {
        rc.warnings.push_back("packet.width " + format_double(rc.packet.width) +
                              " (internal units) spans fewer than 10 lattice periods (" +
                              format_double(threshold) +
                              "); thin-grating orders will overlap");
      }
      const double box = rc.grid.periods * std::numbers::pi /
                         (rc.derived.n * rc.vacuum_wavenumber);
      if (rc.packet.width > box / 8.0) {
        rc.warnings.push_back("packet.width " + format_double(rc.packet.width) +
                              " is large for the box length " + format_double(box) +
                              "; periodic images will overlap");
      }
    }
  }

  rc.resolved_text = echo_json(raw).dump(2) + "\n";
  return rc;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for config file " + path);
  return parse_config_text(text, path);
}

RunConfig with_parameter(const RunConfig& base, const std::string& parameter, double value) {
  Json j;
  try {
    j = Json::parse(base.resolved_text);
    j[Json::json_pointer(parameter)] = value;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("sweep parameter \"" + parameter + "\" cannot be applied: " +
                          e.what());
  }
  return parse_config_text(j.dump(2), "<sweep point " + parameter + ">");
}

FieldConfig RunConfig::field() const {
  FieldConfig f;
  f.vacuum_wavenumber = vacuum_wavenumber;
  f.envelope_width = envelope_width;
  f.peak_rabi = {mixture.species[0].peak_rabi, mixture.species[1].peak_rabi};
  if (index_override) {
    f.refractive_index = *index_override;
    return f;
  }
  if (derived.singular) {
    throw SingularMediumError(
        "nominal densities sit on the susceptibility pole; no refractive index");
  }
  if (derived.evanescent) {
    throw DomainError("refractive index is evanescent at the nominal densities (n^2 = " +
                      format_double(derived.n_squared) +
                      " < 0); the beam cannot propagate. Set field.index_override to force a "
                      "real index.");
  }
  f.refractive_index = derived.n;
  return f;
}

EvolveConfig RunConfig::evolve_config() const {
  EvolveConfig e;
  e.steps = evolve.steps;
  e.dz = evolve.steps > 0 ? 2.0 * evolve.z_span * envelope_width / evolve.steps : 0.0;
  e.mode = evolve.mode;
  e.kinetic = evolve.kinetic;
  e.observer_stride = evolve.observer_stride;
  e.field = field();
  e.mixture = mixture;
  return e;
}

MatterState RunConfig::initial_state() const {
  const FieldConfig f = field();
  const double box = grid.periods * std::numbers::pi /
                     (f.refractive_index * f.vacuum_wavenumber);
  const double dy = box / grid.n_points;
  const double z0 = -evolve.z_span * envelope_width;
  switch (packet.shape) {
    case PacketShape::uniform:
      return make_uniform_state(grid.n_points, dy, mixture.densities, z0);
    case PacketShape::gaussian:
      return make_gaussian_state(grid.n_points, dy, mixture.densities, packet.width,
                                 packet.center, z0);
    case PacketShape::file: {
      MatterState s = read_snapshot_binary(packet.path);
      s.z = z0;
      return s;
    }
  }
  throw DomainError("initial_state: unknown packet shape");
}

}  // namespace bec2
