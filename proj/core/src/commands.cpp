#include "bec2/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "bec2/output.hpp"
#include "bec2/propagator.hpp"
#include "bec2/raman_nath.hpp"
#include "bec2/validation.hpp"

namespace bec2 {

namespace {

using Json = nlohmann::ordered_json;

std::string flag_token(const Error& e) {
  switch (e.exit_code()) {
    case ExitCode::validation: return "validation";
    case ExitCode::singular: return "singular";
    case ExitCode::numeric_blowup: return "blowup";
    case ExitCode::io: return "io";
    case ExitCode::interrupted: return "interrupted";
    default: return "error";
  }
}

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_double(v.get<double>());
  return v.dump();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;

  std::string to_csv() const {
    std::vector<std::vector<std::string>> text;
    text.reserve(rows.size());
    for (const auto& row : rows) {
      std::vector<std::string> r;
      r.reserve(row.size());
      for (const auto& v : row) r.push_back(cell(v));
      text.push_back(std::move(r));
    }
    return csv_table(header, text);
  }

  Json to_json() const {
    Json arr = Json::array();
    for (const auto& row : rows) {
      Json obj;
      for (std::size_t i = 0; i < header.size() && i < row.size(); ++i) {
        obj[header[i]] = row[i];
      }
      arr.push_back(std::move(obj));
    }
    return arr;
  }
};

void write_table(RunWriter& w, const std::string& stem, TableFormat format,
                 const Table& t) {
  if (format == TableFormat::csv) {
    w.write_text(stem + ".csv", t.to_csv());
  } else {
    w.write_text(stem + ".json", t.to_json().dump(2) + "\n");
  }
}

Json derived_json(const RunConfig& cfg) {
  const DerivedQuantities& d = cfg.derived;
  Json out;
  out["alpha"] = {d.alpha[0], d.alpha[1]};
  out["eff_volume"] = {d.eff_volume[0], d.eff_volume[1]};
  out["eps"] = {d.eps[0], d.eps[1]};
  out["screening_sum"] = d.screening_sum;
  out["chi"] = d.chi;
  out["n_squared"] = d.n_squared;
  out["n"] = d.n;
  out["coupling"] = {d.coupling[0], d.coupling[1]};
  out["tau"] = {d.tau[0], d.tau[1]};
  out["singular"] = d.singular;
  out["evanescent"] = d.evanescent;
  out["components_separated"] = d.components_separated;
  return out;
}

std::string derived_flags(const RunConfig& cfg) {
  std::string flags;
  auto add = [&](const char* t) {
    if (!flags.empty()) flags += ';';
    flags += t;
  };
  if (cfg.derived.singular) add("singular");
  if (cfg.derived.evanescent) add("evanescent");
  return flags;
}

void write_snapshot(RunWriter& w, const RunConfig& cfg, const std::string& stem,
                    const MatterState& s) {
  if (cfg.output.snapshot_format == SnapshotFormat::binary) {
    write_snapshot_binary(w, stem, s);
  } else {
    w.write_text(stem + ".csv", snapshot_csv(s));
  }
}

// Points of the sweep grid, in order.
std::vector<double> sweep_values(const SweepConfig& sw) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(sw.count));
  for (int i = 0; i < sw.count; ++i) {
    const double t = sw.count == 1 ? 0.0 : static_cast<double>(i) / (sw.count - 1);
    v.push_back(sw.from + (sw.to - sw.from) * t);
  }
  return v;
}

// Re-resolves the configuration at one sweep point, with the sweep block
// stripped so point runs do not recurse.
RunConfig sweep_point_config(const RunConfig& base, const std::string& parameter,
                             double value) {
  Json j;
  try {
    j = Json::parse(base.resolved_text);
    j.erase("sweep");
    j[Json::json_pointer(parameter)] = value;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("sweep parameter \"" + parameter +
                          "\" cannot be applied: " + e.what());
  }
  return parse_config_text(j.dump(2), "<sweep point>");
}

using Metrics = std::vector<std::pair<std::string, double>>;

// ---- chi / index ----------------------------------------------------------

Metrics medium_metrics(const RunConfig& cfg) {
  return {{"rho_1", cfg.mixture.densities[0]},
          {"rho_2", cfg.mixture.densities[1]},
          {"S", cfg.derived.screening_sum},
          {"chi", cfg.derived.chi},
          {"n", cfg.derived.n}};
}

Metrics do_medium_table(const RunConfig& cfg, const CommandOptions& opts,
                        const std::string& name) {
  RunWriter w(opts.out_dir);
  w.write_text("resolved_config.json", cfg.resolved_text);

  Table t;
  t.header = {"rho_1", "rho_2", "S", "chi", "n", "flags"};
  std::vector<std::string> row_warnings;
  // The table commands interpret the sweep block themselves: one table, one
  // row per point. Without a sweep block the table has the nominal row only.
  if (cfg.sweep) {
    const auto values = sweep_values(*cfg.sweep);
    for (double v : values) {
      try {
        const RunConfig pc = sweep_point_config(cfg, cfg.sweep->parameter, v);
        const Metrics m = medium_metrics(pc);
        t.rows.push_back({m[0].second, m[1].second, m[2].second, m[3].second, m[4].second,
                          derived_flags(pc)});
      } catch (const Error& e) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        t.rows.push_back({nan, nan, nan, nan, nan, flag_token(e)});
        row_warnings.push_back(e.what());
      }
    }
  } else {
    const Metrics m = medium_metrics(cfg);
    t.rows.push_back(
        {m[0].second, m[1].second, m[2].second, m[3].second, m[4].second, derived_flags(cfg)});
  }
  write_table(w, name, cfg.output.table_format, t);

  Json summary;
  summary["command"] = name;
  summary["rows"] = t.rows.size();
  summary["warnings"] = cfg.warnings;
  for (const auto& rw : row_warnings) summary["warnings"].push_back(rw);
  summary["derived"] = derived_json(cfg);
  w.write_text("summary.json", summary.dump(2) + "\n");
  w.write_manifest(name, true);
  return medium_metrics(cfg);
}

// ---- diffract --------------------------------------------------------------

Metrics do_diffract(const RunConfig& cfg, const CommandOptions& opts) {
  RunWriter w(opts.out_dir);
  w.write_text("resolved_config.json", cfg.resolved_text);

  const FieldConfig f = cfg.field();
  const DiffractionSpectrum spec = assemble_spectrum(cfg.mixture, f, cfg.max_order);

  Table t;
  t.header = {"species", "q", "probability", "angle_rad"};
  std::array<double, 2> psum{0.0, 0.0};
  for (int j = 0; j < 2; ++j) {
    for (const auto& line : spec.lines[j]) {
      psum[j] += line.probability;
      if (line.probability != 0.0) {
        t.rows.push_back({j + 1, line.order, line.probability, line.angle});
      }
    }
  }
  write_table(w, "spectrum", cfg.output.table_format, t);

  Json summary;
  summary["command"] = "diffract";
  summary["tau"] = {spec.tau[0], spec.tau[1]};
  summary["coupling"] = {spec.coupling[0], spec.coupling[1]};
  summary["refractive_index"] = spec.refractive_index;
  summary["max_order"] = spec.max_order;
  summary["components_separated"] = spec.components_separated;
  summary["probability_sum"] = {psum[0], psum[1]};
  summary["warnings"] = cfg.warnings;
  summary["derived"] = derived_json(cfg);
  w.write_text("summary.json", summary.dump(2) + "\n");
  w.write_manifest("diffract", true);

  const auto p0 = order_probabilities(spec.tau[0], 0)[0].second;
  const auto p0b = order_probabilities(spec.tau[1], 0)[0].second;
  return {{"tau_1", spec.tau[0]},
          {"tau_2", spec.tau[1]},
          {"n", spec.refractive_index},
          {"separated", spec.components_separated ? 1.0 : 0.0},
          {"p0_1", p0},
          {"p0_2", p0b}};
}

// ---- simulate ---------------------------------------------------------------

Metrics do_simulate(const RunConfig& cfg, const CommandOptions& opts, bool* interrupted) {
  RunWriter w(opts.out_dir);
  w.write_text("resolved_config.json", cfg.resolved_text);

  const MatterState initial = cfg.initial_state();
  const EvolveConfig ec = cfg.evolve_config();
  write_snapshot(w, cfg, "initial_state", initial);

  const EvolveResult res = evolve(initial, ec, {}, opts.cancelled);
  write_snapshot(w, cfg, "final_state", res.state);

  Table series;
  series.header = {"step", "z", "t_1", "t_2", "norm_1", "norm_2", "adiab_1", "adiab_2"};
  for (const auto& rec : res.series) {
    series.rows.push_back({rec.step, rec.z, rec.time[0], rec.time[1], rec.norm[0],
                           rec.norm[1], rec.adiabaticity[0], rec.adiabaticity[1]});
  }
  write_table(w, "timeseries", cfg.output.table_format, series);

  const auto orders =
      order_weights(res.state, ec.field.refractive_index, ec.field.vacuum_wavenumber,
                    cfg.max_order);
  if (orders) {
    Table t;
    t.header = {"species", "q", "weight"};
    for (int j = 0; j < 2; ++j) {
      for (const auto& [q, weight] : orders->weights[j]) {
        t.rows.push_back({j + 1, q, weight});
      }
    }
    write_table(w, "orders", cfg.output.table_format, t);
  }

  const SeriesRecord& last = res.series.back();
  Json summary;
  summary["command"] = "simulate";
  summary["completed"] = res.completed;
  summary["steps_done"] = res.steps_done;
  summary["final"] = {{"z", last.z},
                      {"time", {last.time[0], last.time[1]}},
                      {"norm", {last.norm[0], last.norm[1]}},
                      {"adiabaticity", {last.adiabaticity[0], last.adiabaticity[1]}}};
  summary["warnings"] = cfg.warnings;
  for (const auto& rw : res.warnings) summary["warnings"].push_back(rw);
  summary["derived"] = derived_json(cfg);
  w.write_text("summary.json", summary.dump(2) + "\n");
  w.write_manifest("simulate", res.completed);

  if (interrupted) *interrupted = !res.completed;
  return {{"norm_1", last.norm[0]},
          {"norm_2", last.norm[1]},
          {"adiab_1", last.adiabaticity[0]},
          {"adiab_2", last.adiabaticity[1]},
          {"completed", res.completed ? 1.0 : 0.0}};
}

// ---- sweep ------------------------------------------------------------------

std::vector<std::string> metric_keys(const std::string& command) {
  if (command == "chi" || command == "index") return {"rho_1", "rho_2", "S", "chi", "n"};
  if (command == "diffract") return {"tau_1", "tau_2", "n", "separated", "p0_1", "p0_2"};
  return {"norm_1", "norm_2", "adiab_1", "adiab_2", "completed"};
}

struct PointOutcome {
  Metrics metrics;
  std::string flags;
};

Metrics execute_point(const std::string& command, const RunConfig& cfg,
                      const CommandOptions& opts, bool* interrupted) {
  if (command == "chi" || command == "index") return do_medium_table(cfg, opts, command);
  if (command == "diffract") return do_diffract(cfg, opts);
  return do_simulate(cfg, opts, interrupted);
}

int do_sweep(const RunConfig& cfg, const CommandOptions& opts) {
  if (!cfg.sweep) {
    throw ValidationError("the sweep command requires a sweep block in the configuration");
  }
  const SweepConfig sw = *cfg.sweep;
  RunWriter w(opts.out_dir);
  w.write_text("resolved_config.json", cfg.resolved_text);

  const std::vector<double> values = sweep_values(sw);
  const int count = static_cast<int>(values.size());
  int width = 4;
  for (long long p = 10000; count > p; p *= 10) ++width;
  auto point_name = [&](int i) {
    std::string digits = std::to_string(i);
    return "point_" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') +
           digits;
  };

  std::vector<PointOutcome> outcomes(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  std::atomic<bool> interrupted{false};
  const int jobs = std::clamp(opts.jobs, 1, 256);

  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      PointOutcome& out = outcomes[static_cast<std::size_t>(i)];
      if (opts.cancelled && opts.cancelled()) {
        out.flags = "cancelled";
        interrupted = true;
        continue;
      }
      try {
        const RunConfig pc = sweep_point_config(cfg, sw.parameter, values[i]);
        CommandOptions po;
        po.out_dir = opts.out_dir / point_name(i);
        po.jobs = 1;
        po.cancelled = opts.cancelled;
        bool point_interrupted = false;
        out.metrics = execute_point(sw.command, pc, po, &point_interrupted);
        if (point_interrupted) {
          out.flags = "interrupted";
          interrupted = true;
        }
      } catch (const Error& e) {
        out.flags = flag_token(e);
      } catch (const std::exception&) {
        out.flags = "error";
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  const std::vector<std::string> keys = metric_keys(sw.command);
  Table merged;
  merged.header.push_back("param");
  for (const auto& k : keys) merged.header.push_back(k);
  merged.header.push_back("flags");
  int failed = 0;
  for (int i = 0; i < count; ++i) {
    const PointOutcome& out = outcomes[static_cast<std::size_t>(i)];
    std::vector<Json> row;
    row.push_back(values[static_cast<std::size_t>(i)]);
    if (out.metrics.empty()) {
      ++failed;
      for (std::size_t k = 0; k < keys.size(); ++k) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
      }
    } else {
      for (const auto& [key, value] : out.metrics) {
        (void)key;
        row.push_back(value);
      }
    }
    row.push_back(out.flags);
    merged.rows.push_back(std::move(row));
  }
  write_table(w, "merged", cfg.output.table_format, merged);

  Json summary;
  summary["command"] = "sweep";
  summary["swept_command"] = sw.command;
  summary["parameter"] = sw.parameter;
  summary["points"] = count;
  summary["failed_points"] = failed;
  summary["complete"] = !interrupted.load();
  summary["warnings"] = cfg.warnings;
  w.write_text("summary.json", summary.dump(2) + "\n");
  w.write_manifest("sweep", !interrupted.load());
  return interrupted.load() ? static_cast<int>(ExitCode::interrupted) : 0;
}

}  // namespace

int run_index(const RunConfig& cfg, const CommandOptions& opts) {
  do_medium_table(cfg, opts, "index");
  return 0;
}

int run_chi(const RunConfig& cfg, const CommandOptions& opts) {
  do_medium_table(cfg, opts, "chi");
  return 0;
}

int run_diffract(const RunConfig& cfg, const CommandOptions& opts) {
  do_diffract(cfg, opts);
  return 0;
}

int run_simulate(const RunConfig& cfg, const CommandOptions& opts) {
  bool interrupted = false;
  do_simulate(cfg, opts, &interrupted);
  return interrupted ? static_cast<int>(ExitCode::interrupted) : 0;
}

int run_sweep(const RunConfig& cfg, const CommandOptions& opts) {
  return do_sweep(cfg, opts);
}

int run_command(const std::string& name, const RunConfig& cfg, const CommandOptions& opts) {
  if (name == "index") return run_index(cfg, opts);
  if (name == "chi") return run_chi(cfg, opts);
  if (name == "diffract") return run_diffract(cfg, opts);
  if (name == "simulate") return run_simulate(cfg, opts);
  if (name == "sweep") return run_sweep(cfg, opts);
  throw ValidationError("unknown command \"" + name + "\"");
}

int run_validate(const std::optional<std::filesystem::path>& out_dir, std::ostream& log) {
  const std::vector<CheckResult> results = run_acceptance_checks();
  int passed = 0;
  for (const auto& r : results) {
    log << format_check_line(r) << "\n";
    if (r.passed) ++passed;
  }
  log << "acceptance: " << passed << "/" << results.size() << " passed\n";

  if (out_dir) {
    RunWriter w(*out_dir);
    Json report;
    report["command"] = "validate";
    report["passed"] = passed;
    report["total"] = results.size();
    report["checks"] = Json::array();
    for (const auto& r : results) {
      Json c;
      c["id"] = r.id;
      c["name"] = r.name;
      c["passed"] = r.passed;
      c["measured"] = r.measured;
      c["threshold"] = r.threshold;
      c["detail"] = r.detail;
      report["checks"].push_back(std::move(c));
    }
    w.write_text("report.json", report.dump(2) + "\n");
    w.write_manifest("validate", true);
  }
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}

}  // namespace bec2
