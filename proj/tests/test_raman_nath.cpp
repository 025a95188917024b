#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bec2/errors.hpp"
#include "bec2/medium_optics.hpp"
#include "bec2/raman_nath.hpp"

using namespace bec2;

namespace {

Species grating_species(double detuning, double rabi) {
  Species s;
  s.mass = 1.0;
  s.detuning = detuning;
  s.dipole_moment = 1.0;
  s.group_velocity = 1.0;
  s.peak_rabi = rabi;
  return s;
}

FieldConfig grating_field(double rabi0, double rabi1) {
  FieldConfig f;
  f.vacuum_wavenumber = 1.0;
  f.envelope_width = 1.0;
  f.refractive_index = 1.0;
  f.peak_rabi = {rabi0, rabi1};
  return f;
}

}  // namespace

TEST_SUITE("raman_nath") {

TEST_CASE("coupling strength reference value") {
  // Omega^2 = 1.6, Delta = 1, w_L = v_g = 1: g = 0.1 sqrt(pi).
  const Species s = grating_species(1.0, std::sqrt(1.6));
  const FieldConfig f = grating_field(std::sqrt(1.6), 0.0);
  CHECK(coupling_strength(s, f, 0) ==
        doctest::Approx(0.17724538509055160).epsilon(1e-14));
}

TEST_CASE("coupling strength scales and signs") {
  Species s = grating_species(2.0, 1.0);
  FieldConfig f = grating_field(1.0, 0.0);
  const double base = coupling_strength(s, f, 0);
  CHECK(base > 0.0);

  s.detuning = -2.0;
  CHECK(coupling_strength(s, f, 0) == doctest::Approx(-base).epsilon(1e-14));

  s.detuning = 2.0;
  s.group_velocity = 2.0;  // faster transit, half the accumulated phase
  CHECK(coupling_strength(s, f, 0) == doctest::Approx(base / 2.0).epsilon(1e-14));

  s.group_velocity = 1.0;
  f.envelope_width = 3.0;
  CHECK(coupling_strength(s, f, 0) == doctest::Approx(3.0 * base).epsilon(1e-14));
}

TEST_CASE("tau applies the screening correction twice") {
  Mixture m;
  m.species[0] = grating_species(-1.0, 1.0);  // alpha = +1
  m.species[1] = grating_species(1.0, 0.0);
  m.densities = {0.023873241463784300, 0.0};  // screening factor 0.9
  const double g = 0.25;
  CHECK(tau_parameter(g, m) == doctest::Approx(2.0 * g / 0.81).epsilon(1e-12));
}

TEST_CASE("tau reduces to 2 g in vacuum, bitwise") {
  Mixture m;
  m.species[0] = grating_species(-3.0, 1.0);
  m.species[1] = grating_species(5.0, 0.5);
  m.densities = {0.0, 0.0};
  const double g = 0.37;
  CHECK(tau_parameter(g, m) == 2.0 * g);
}

TEST_CASE("tau at the medium pole throws") {
  Mixture m;
  m.species[0] = grating_species(-1.0, 1.0);  // alpha = 1
  m.species[1] = grating_species(1.0, 0.0);
  m.densities = {3.0 / (4.0 * std::numbers::pi), 0.0};
  CHECK_THROWS_AS(tau_parameter(0.1, m), SingularDetuningError);
}

TEST_CASE("order probabilities are Bessel squares") {
  const auto p = order_probabilities(1.0, 2);
  REQUIRE(p.size() == 5);
  CHECK(p[0].first == -2);
  CHECK(p[4].first == 2);
  CHECK(p[2].first == 0);
  CHECK(p[2].second == doctest::Approx(0.5855274995136640).epsilon(1e-13));
  CHECK(p[3].second == doctest::Approx(0.19364451801445908).epsilon(1e-13));
  CHECK(p[1].second == p[3].second);  // same |q|, identical value
  CHECK(p[0].second == p[4].second);
}

TEST_CASE("negative tau gives the same populations") {
  const auto plus = order_probabilities(1.7, 4);
  const auto minus = order_probabilities(-1.7, 4);
  for (std::size_t i = 0; i < plus.size(); ++i) {
    CHECK(plus[i].second == minus[i].second);
  }
}

TEST_CASE("default truncation covers the population") {
  for (double tau : {0.3, 1.0, 5.2, 24.0}) {
    const int q_max = default_max_order(tau);
    CHECK(q_max >= static_cast<int>(std::ceil(tau)) + 20);
    const auto p = order_probabilities(tau, q_max);
    double sum = 0.0;
    for (const auto& [q, prob] : p) sum += prob;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("diffraction angle reference value") {
  Species s = grating_species(1.0, 0.0);
  s.mass = 2.0;
  s.group_velocity = 1.0;
  // atan(2 q n hbar k_L / (m v_g)) = atan(1) at q = 1, n = 1, k_L = 1.
  CHECK(diffraction_angle(1, s, 1.0, 1.0) ==
        doctest::Approx(0.7853981633974483).epsilon(1e-15));
  CHECK(diffraction_angle(0, s, 1.0, 1.0) == 0.0);
  CHECK(diffraction_angle(-1, s, 1.0, 1.0) ==
        doctest::Approx(-0.7853981633974483).epsilon(1e-15));
}

TEST_CASE("assemble_spectrum wires couplings, taus and angles together") {
  Mixture m;
  m.species[0] = grating_species(40.0, 2.0);
  m.species[1] = grating_species(-60.0, 1.5);
  m.species[1].mass = 1.5;
  m.densities = {0.001, 0.002};
  FieldConfig f = grating_field(2.0, 1.5);
  const MediumSample sample = MediumSample::from(m);
  f.refractive_index = refractive_index(sample).value.real();

  const DiffractionSpectrum spec = assemble_spectrum(m, f, 6);
  CHECK(spec.max_order == 6);
  for (int j = 0; j < 2; ++j) {
    CHECK(spec.coupling[j] ==
          doctest::Approx(coupling_strength(m.species[j], f, j)).epsilon(1e-14));
    CHECK(spec.tau[j] ==
          doctest::Approx(tau_parameter(spec.coupling[j], m)).epsilon(1e-14));
    REQUIRE(spec.lines[j].size() == 13);
    CHECK(spec.lines[j].front().order == -6);
    CHECK(spec.lines[j].back().order == 6);
    double sum = 0.0;
    for (const auto& line : spec.lines[j]) {
      sum += line.probability;
      CHECK(line.angle == doctest::Approx(diffraction_angle(
                              line.order, m.species[j], f.refractive_index,
                              f.vacuum_wavenumber)).epsilon(1e-14));
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-8));
  }
  // m_1 v_g1 = 1, m_2 v_g2 = 1.5: orders separate.
  CHECK(spec.components_separated);
}

TEST_CASE("equal mass-velocity products do not separate") {
  Mixture m;
  m.species[0] = grating_species(40.0, 1.0);
  m.species[1] = grating_species(40.0, 1.0);
  m.species[0].mass = 1.0;
  m.species[0].group_velocity = 2.0;
  m.species[1].mass = 2.0;
  m.species[1].group_velocity = 1.0;
  m.densities = {0.001, 0.001};
  const FieldConfig f = grating_field(1.0, 1.0);
  const DiffractionSpectrum spec = assemble_spectrum(m, f, 4);
  CHECK_FALSE(spec.components_separated);
  for (std::size_t i = 0; i < spec.lines[0].size(); ++i) {
    CHECK(spec.lines[0][i].angle == spec.lines[1][i].angle);
  }
}

TEST_CASE("default max order from the larger tau") {
  Mixture m;
  m.species[0] = grating_species(1.0, std::sqrt(1.6));  // g = 0.1 sqrt(pi)
  m.species[1] = grating_species(1.0, 0.0);
  m.densities = {0.0, 0.0};
  const FieldConfig f = grating_field(std::sqrt(1.6), 0.0);
  const DiffractionSpectrum spec = assemble_spectrum(m, f);
  CHECK(spec.max_order == default_max_order(spec.tau[0]));
}

TEST_CASE("far field applies the analytic phase and conserves norms") {
  const double tau0 = 0.8;
  const double tau1 = -1.3;
  const double n = 1.2;
  const double kl = 1.0;
  MatterState in = make_uniform_state(64, 0.1, {1.0, 2.0});
  in.psi[0][5] = {0.3, -0.4};  // non-trivial amplitude to exercise the product
  FarFieldParams p;
  p.tau = {tau0, tau1};
  p.refractive_index = n;
  p.vacuum_wavenumber = kl;
  const FarFieldResult out = far_field_state(in, p);
  CHECK(out.warnings.empty());

  for (int j = 0; j < 2; ++j) {
    CHECK(out.state.norm(j) == doctest::Approx(in.norm(j)).epsilon(1e-12));
  }
  const std::array<double, 2> taus{tau0, tau1};
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < in.n_points; ++i) {
      const double phase = -taus[j] * (1.0 + std::cos(2.0 * n * kl * in.y(i)));
      const std::complex<double> expected =
          in.psi[j][i] * std::polar(1.0, phase);
      CHECK(std::abs(out.state.psi[j][i] - expected) < 1e-14);
    }
  }
}

TEST_CASE("narrow packets trigger the wide-packet warning") {
  const double n = 1.0;
  const double kl = 1.0;
  MatterState in = make_uniform_state(64, 0.1, {1.0, 1.0});
  FarFieldParams p;
  p.tau = {0.5, 0.5};
  p.refractive_index = n;
  p.vacuum_wavenumber = kl;
  p.packet_width = 0.5 * wide_packet_threshold(n, kl);
  const FarFieldResult narrow = far_field_state(in, p);
  CHECK(narrow.warnings.size() == 1);

  p.packet_width = 2.0 * wide_packet_threshold(n, kl);
  const FarFieldResult wide = far_field_state(in, p);
  CHECK(wide.warnings.empty());
}

TEST_CASE("wide packet threshold is ten lattice periods") {
  CHECK(wide_packet_threshold(1.0, 1.0) ==
        doctest::Approx(20.0 * std::numbers::pi).epsilon(1e-14));
  CHECK(wide_packet_threshold(2.0, 1.0) ==
        doctest::Approx(10.0 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("coupling strength validates inputs") {
  const Species s = grating_species(0.0, 1.0);
  const FieldConfig f = grating_field(1.0, 0.0);
  CHECK_THROWS_AS(coupling_strength(s, f, 0), ValidationError);
}

}  // TEST_SUITE
