#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "bec2/config.hpp"
#include "bec2/errors.hpp"
#include "bec2/raman_nath.hpp"

using namespace bec2;

namespace {

const char* kBaseConfig = R"({
  "species": [
    {"mass": 1.0, "detuning": 500.0, "dipole_moment": 1.0, "group_velocity": 1.0, "peak_rabi": 6.0},
    {"mass": 1.0, "detuning": -400.0, "dipole_moment": 0.8, "group_velocity": 1.0, "peak_rabi": 4.0}
  ],
  "mixture": {"densities": [0.01, 0.02]},
  "field": {"envelope_width": 10.0}
})";

std::string violations_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults are materialized") {
  const RunConfig rc = parse_config_text(kBaseConfig);
  CHECK(rc.units.reference_wavenumber == 1.0);
  // Default frequency scale: species-1 recoil at the reference wavenumber.
  CHECK(rc.units.reference_frequency == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rc.grid.n_points == 1024);
  CHECK(rc.grid.periods == 8);
  CHECK(rc.packet.shape == PacketShape::uniform);
  CHECK(rc.evolve.steps == 2000);
  CHECK(rc.evolve.mode == PotentialMode::full);
  CHECK(rc.evolve.kinetic);
  CHECK(rc.evolve.z_span == 6.0);
  CHECK(rc.evolve.observer_stride == 20);  // max(1, steps / 100)
  CHECK(rc.output.table_format == TableFormat::csv);
  CHECK(rc.output.snapshot_format == SnapshotFormat::csv);
  CHECK(rc.vacuum_wavenumber == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(rc.sweep.has_value());
  CHECK_FALSE(rc.index_override.has_value());
  CHECK(rc.warnings.empty());
}

TEST_CASE("derived quantities at the nominal densities") {
  const RunConfig rc = parse_config_text(kBaseConfig);
  // alpha is a volume in units of the reference length cubed, so with
  // k_ref = 1 the internal values match the user-unit formula.
  CHECK(rc.derived.alpha[0] == doctest::Approx(-0.002).epsilon(1e-13));
  CHECK(rc.derived.alpha[1] == doctest::Approx(0.0016).epsilon(1e-13));
  CHECK(rc.derived.eps[0] == doctest::Approx(-2e-5).epsilon(1e-12));
  CHECK(rc.derived.eps[1] == doctest::Approx(3.2e-5).epsilon(1e-12));
  CHECK(rc.derived.screening_sum ==
        doctest::Approx(1.2e-5).epsilon(1e-10));
  CHECK(rc.derived.n_squared ==
        doctest::Approx(1.0 + 4.0 * std::numbers::pi * rc.derived.chi).epsilon(1e-14));
  CHECK_FALSE(rc.derived.singular);
  CHECK_FALSE(rc.derived.evanescent);
  CHECK_FALSE(rc.derived.components_separated);
  // tau at the nominal densities, against the library formulas.
  const FieldConfig f = rc.field();
  for (int j = 0; j < 2; ++j) {
    const double g = coupling_strength(rc.mixture.species[j], f, j);
    CHECK(rc.derived.coupling[j] == doctest::Approx(g).epsilon(1e-13));
    CHECK(rc.derived.tau[j] ==
          doctest::Approx(tau_parameter(g, rc.mixture)).epsilon(1e-13));
  }
  CHECK(rc.max_order ==
        default_max_order(std::max(std::abs(rc.derived.tau[0]),
                                   std::abs(rc.derived.tau[1]))));
}

TEST_CASE("resolved text round trips exactly") {
  const RunConfig rc = parse_config_text(kBaseConfig);
  const RunConfig again = parse_config_text(rc.resolved_text);
  CHECK(again == rc);
  CHECK(again.resolved_text == rc.resolved_text);
}

TEST_CASE("round trip with explicit units, grid, sweep and gaussian packet") {
  const std::string text = R"({
    "units": {"reference_wavenumber": 2.0},
    "species": [
      {"mass": 0.5, "detuning": 300.0, "dipole_moment": 0.4, "group_velocity": 2.0, "peak_rabi": 1.0},
      {"mass": 0.5, "detuning": -250.0, "dipole_moment": 0.4, "group_velocity": 2.0, "peak_rabi": 1.0}
    ],
    "mixture": {"densities": [0.001, 0.001]},
    "field": {"envelope_width": 30.0, "vacuum_wavenumber": 2.0},
    "grid": {"n_points": 256, "periods": 16},
    "packet": {"shape": "gaussian", "width": 18.0, "center": 0.0},
    "evolve": {"steps": 100, "mode": "expanded", "kinetic": false, "z_span": 4.0},
    "diffraction": {"max_order": 9},
    "output": {"table_format": "json", "snapshot_format": "binary"},
    "sweep": {"command": "chi", "parameter": "/mixture/densities/0", "from": 0.0, "to": 0.01, "count": 5}
  })";
  const RunConfig rc = parse_config_text(text);
  // Default reference frequency: recoil of species 1, k_ref^2 / (2 m_1).
  CHECK(rc.units.reference_frequency == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(rc.vacuum_wavenumber == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rc.envelope_width == doctest::Approx(60.0).epsilon(1e-14));  // 30 * k_ref
  CHECK(rc.packet.width == doctest::Approx(36.0).epsilon(1e-14));
  CHECK(rc.evolve.mode == PotentialMode::expanded);
  CHECK_FALSE(rc.evolve.kinetic);
  CHECK(rc.max_order == 9);
  REQUIRE(rc.sweep.has_value());
  CHECK(rc.sweep->command == "chi");
  CHECK(rc.sweep->count == 5);
  CHECK(rc.evolve.observer_stride == 1);  // max(1, 100 / 100)

  const RunConfig again = parse_config_text(rc.resolved_text);
  CHECK(again == rc);
}

TEST_CASE("comments are accepted") {
  const std::string text = R"({
    // two identical species
    "species": [
      {"mass": 1.0, "detuning": 500.0},
      {"mass": 1.0, "detuning": 500.0}
    ],
    "mixture": {"densities": [0.0, 0.0]},
    "field": {"envelope_width": 5.0}
  })";
  CHECK_NOTHROW(parse_config_text(text));
}

TEST_CASE("unknown keys are rejected by name") {
  std::string text = kBaseConfig;
  text.insert(text.rfind('}'), R"(, "specie": [] )");
  const std::string what = violations_of(text);
  CHECK(what.find("unknown key \"specie\"") != std::string::npos);
}

TEST_CASE("species array must have exactly two entries") {
  const std::string text = R"({
    "species": [{"mass": 1.0, "detuning": 500.0}],
    "field": {"envelope_width": 5.0}
  })";
  CHECK(violations_of(text).find("exactly 2") != std::string::npos);
}

TEST_CASE("field block is required") {
  const std::string text = R"({
    "species": [
      {"mass": 1.0, "detuning": 500.0},
      {"mass": 1.0, "detuning": 500.0}
    ]
  })";
  CHECK(violations_of(text).find("field") != std::string::npos);
}

TEST_CASE("all violations are collected at once") {
  const std::string text = R"({
    "species": [
      {"mass": 1.0, "detuning": 500.0},
      {"mass": 1.0, "detuning": 500.0}
    ],
    "field": {"envelope_width": 5.0},
    "grid": {"n_points": 48},
    "evolve": {"steps": -3, "z_span": -1.0}
  })";
  try {
    parse_config_text(text);
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(e.violations().size() == 3);
  }
}

TEST_CASE("eps channel derives the densities") {
  const std::string text = R"({
    "species": [
      {"mass": 1.0, "detuning": 500.0, "dipole_moment": 1.0},
      {"mass": 1.0, "detuning": -500.0, "dipole_moment": 1.0}
    ],
    "mixture": {"eps": [-1e-5, 0.0]},
    "field": {"envelope_width": 10.0}
  })";
  const RunConfig rc = parse_config_text(text);
  // alpha_1 = -0.002: rho_1 = eps / alpha = 0.005.
  CHECK(rc.mixture.densities[0] == doctest::Approx(0.005).epsilon(1e-13));
  CHECK(rc.mixture.densities[1] == 0.0);
  CHECK(rc.derived.eps[0] == doctest::Approx(-1e-5).epsilon(1e-13));
  // The canonical echo keeps the eps channel.
  CHECK(rc.resolved_text.find("\"eps\"") != std::string::npos);
  const RunConfig again = parse_config_text(rc.resolved_text);
  CHECK(again == rc);
}

TEST_CASE("eps with the wrong sign is rejected") {
  const std::string text = R"({
    "species": [
      {"mass": 1.0, "detuning": 500.0, "dipole_moment": 1.0},
      {"mass": 1.0, "detuning": 500.0, "dipole_moment": 1.0}
    ],
    "mixture": {"eps": [1e-5, 0.0]},
    "field": {"envelope_width": 10.0}
  })";
  CHECK(violations_of(text).find("wrong sign") != std::string::npos);
}

TEST_CASE("eps without a dipole moment is rejected") {
  const std::string text = R"({
    "species": [
      {"mass": 1.0, "detuning": 500.0},
      {"mass": 1.0, "detuning": 500.0}
    ],
    "mixture": {"eps": [-1e-5, 0.0]},
    "field": {"envelope_width": 10.0}
  })";
  CHECK(violations_of(text).find("zero polarizability") != std::string::npos);
}

TEST_CASE("giving both densities and eps warns and prefers eps") {
  const std::string text = R"({
    "species": [
      {"mass": 1.0, "detuning": 500.0, "dipole_moment": 1.0},
      {"mass": 1.0, "detuning": 500.0, "dipole_moment": 1.0}
    ],
    "mixture": {"densities": [0.5, 0.5], "eps": [-1e-5, -2e-5]},
    "field": {"envelope_width": 10.0}
  })";
  const RunConfig rc = parse_config_text(text);
  REQUIRE(rc.warnings.size() >= 1);
  CHECK(rc.warnings[0].find("eps takes precedence") != std::string::npos);
  CHECK(rc.mixture.densities[0] == doctest::Approx(0.005).epsilon(1e-13));
  CHECK(rc.mixture.densities[1] == doctest::Approx(0.01).epsilon(1e-13));
}

TEST_CASE("sweep validation") {
  auto sweep_text = [](const std::string& body) {
    std::string text = kBaseConfig;
    text.insert(text.rfind('}'), ", \"sweep\": " + body);
    return text;
  };
  CHECK(violations_of(sweep_text(
            R"({"command": "launch", "parameter": "/mixture/densities/0", "from": 0, "to": 1, "count": 3})"))
            .find("sweep.command") != std::string::npos);
  CHECK(violations_of(sweep_text(
            R"({"command": "chi", "parameter": "mixture", "from": 0, "to": 1, "count": 3})"))
            .find("JSON pointer") != std::string::npos);
  CHECK(violations_of(sweep_text(
            R"({"command": "chi", "parameter": "/mixture/densities/0", "from": 0, "to": 1, "count": 0})"))
            .find("count") != std::string::npos);
  CHECK(violations_of(sweep_text(
            R"({"command": "chi", "parameter": "/mixture/densities/0", "to": 1, "count": 3})"))
            .find("sweep.from") != std::string::npos);  // no default for the endpoints
}

TEST_CASE("with_parameter rewrites one value and re-derives") {
  const RunConfig base = parse_config_text(kBaseConfig);
  const RunConfig moved = with_parameter(base, "/mixture/densities/0", 0.03);
  CHECK(moved.mixture.densities[0] == doctest::Approx(0.03).epsilon(1e-13));
  CHECK(moved.mixture.densities[1] == base.mixture.densities[1]);
  CHECK(moved.derived.screening_sum != base.derived.screening_sum);
  CHECK_THROWS_AS(with_parameter(base, "/nonsense/path", 1.0), ValidationError);
}

TEST_CASE("index override wins over the derived index") {
  std::string text = kBaseConfig;
  text.replace(text.find("\"envelope_width\": 10.0"), 22,
               "\"envelope_width\": 10.0, \"index_override\": 1.5");
  const RunConfig rc = parse_config_text(text);
  REQUIRE(rc.index_override.has_value());
  CHECK(rc.field().refractive_index == 1.5);
}

TEST_CASE("singular densities are flagged and field() refuses") {
  // alpha_1 = +0.002 (red detuned): pole at rho = 3 / (4 pi alpha).
  const double rho_pole = 3.0 / (4.0 * std::numbers::pi * 0.002);
  char rho_text[40];
  std::snprintf(rho_text, sizeof rho_text, "%.17g", rho_pole);
  const std::string text = R"({
    "species": [
      {"mass": 1.0, "detuning": -500.0, "dipole_moment": 1.0},
      {"mass": 1.0, "detuning": -500.0, "dipole_moment": 1.0}
    ],
    "mixture": {"densities": [)" + std::string(rho_text) + R"(, 0.0]},
    "field": {"envelope_width": 10.0}
  })";
  const RunConfig rc = parse_config_text(text);
  CHECK(rc.derived.singular);
  CHECK(std::isnan(rc.derived.chi));
  CHECK_THROWS_AS(rc.field(), SingularMediumError);
}

TEST_CASE("evanescent densities are flagged and field() explains the override") {
  // alpha < 0 and dense enough for n^2 < 0: S < -3 / (8 pi).
  const std::string text = R"({
    "species": [
      {"mass": 1.0, "detuning": 5.0, "dipole_moment": 1.0},
      {"mass": 1.0, "detuning": 5.0, "dipole_moment": 1.0}
    ],
    "mixture": {"densities": [0.75, 0.0]},
    "field": {"envelope_width": 10.0}
  })";
  const RunConfig rc = parse_config_text(text);
  CHECK(rc.derived.evanescent);
  CHECK(rc.derived.n == 0.0);
  try {
    rc.field();
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("index_override") != std::string::npos);
  }
}

TEST_CASE("gaussian packet warnings") {
  // Narrower than 10 lattice periods: warn.
  const std::string narrow = R"({
    "species": [
      {"mass": 1.0, "detuning": 500.0, "dipole_moment": 1.0},
      {"mass": 1.0, "detuning": 500.0, "dipole_moment": 1.0}
    ],
    "mixture": {"densities": [0.0, 0.0]},
    "field": {"envelope_width": 10.0},
    "grid": {"n_points": 1024, "periods": 64},
    "packet": {"shape": "gaussian", "width": 20.0}
  })";
  const RunConfig rc = parse_config_text(narrow);
  REQUIRE(rc.warnings.size() == 1);
  CHECK(rc.warnings[0].find("lattice periods") != std::string::npos);

  // Comparable to the box: warn about periodic images.
  const std::string wide = R"({
    "species": [
      {"mass": 1.0, "detuning": 500.0, "dipole_moment": 1.0},
      {"mass": 1.0, "detuning": 500.0, "dipole_moment": 1.0}
    ],
    "mixture": {"densities": [0.0, 0.0]},
    "field": {"envelope_width": 10.0},
    "grid": {"n_points": 1024, "periods": 64},
    "packet": {"shape": "gaussian", "width": 80.0}
  })";
  const RunConfig rc2 = parse_config_text(wide);
  REQUIRE(rc2.warnings.size() == 1);
  CHECK(rc2.warnings[0].find("periodic images") != std::string::npos);
}

TEST_CASE("initial state follows the grid and packet") {
  const RunConfig rc = parse_config_text(kBaseConfig);
  const MatterState s = rc.initial_state();
  CHECK(s.n_points == 1024);
  CHECK(s.z == doctest::Approx(-60.0).epsilon(1e-14));
  const double klat = rc.field().refractive_index * rc.vacuum_wavenumber;
  CHECK(s.length() ==
        doctest::Approx(8.0 * std::numbers::pi / klat).epsilon(1e-13));
  CHECK(std::abs(s.psi[0][0]) == doctest::Approx(0.1).epsilon(1e-13));
}

TEST_CASE("evolve_config wires dz from the spans") {
  const RunConfig rc = parse_config_text(kBaseConfig);
  const EvolveConfig ec = rc.evolve_config();
  CHECK(ec.steps == 2000);
  // dz = 2 z_span w / steps = 2 * 6 * 100 / 2000; w internal = 10 * k_ref?
  CHECK(ec.dz == doctest::Approx(2.0 * 6.0 * rc.envelope_width / 2000.0).epsilon(1e-14));
  CHECK(ec.field.refractive_index == doctest::Approx(rc.derived.n).epsilon(1e-14));
}

TEST_CASE("parse errors carry the source name") {
  try {
    parse_config_text("{ not json", "myfile.json");
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("myfile.json") != std::string::npos);
  }
}

TEST_CASE("nonexistent config file raises IoError") {
  CHECK_THROWS_AS(parse_config_file("/nonexistent/path/config.json"), IoError);
}

}  // TEST_SUITE
