#include "bec2/medium_optics.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace bec2 {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_sample(const MediumSample& s) {
  if (!std::isfinite(s.density_1) || s.density_1 < 0.0 ||
      !std::isfinite(s.density_2) || s.density_2 < 0.0) {
    throw DomainError("medium sample: densities must be >= 0 and finite, got (" +
                      fmt(s.density_1) + ", " + fmt(s.density_2) + ")");
  }
  if (!std::isfinite(s.alpha_1) || !std::isfinite(s.alpha_2)) {
    throw DomainError("medium sample: polarizabilities must be finite, got (" +
                      fmt(s.alpha_1) + ", " + fmt(s.alpha_2) + ")");
  }
}

}  // namespace

MediumSample MediumSample::from(const Mixture& m) {
  MediumSample s;
  s.density_1 = m.densities[0];
  s.density_2 = m.densities[1];
  s.alpha_1 = polarizability(m.species[0], 0);
  s.alpha_2 = polarizability(m.species[1], 1);
  check_sample(s);
  return s;
}

double local_detuning(const MediumSample& s, double bare_detuning) {
  check_sample(s);
  if (!std::isfinite(bare_detuning)) {
    throw DomainError("local_detuning: bare detuning must be finite");
  }
  return bare_detuning * screening_factor(s);
}

double susceptibility(const MediumSample& s) {
  check_sample(s);
  const double screen = screening_factor(s);
  if (std::abs(screen) <= screening_tolerance) {
    throw SingularMediumError(
        "susceptibility pole: |1 - (4 pi / 3) S| = " + fmt(std::abs(screen)) +
        " <= " + fmt(screening_tolerance) + " at S = " + fmt(screening_sum(s)));
  }
  return screening_sum(s) / screen;
}

RefractiveIndex refractive_index(const MediumSample& s) {
  check_sample(s);
  const double screen = screening_factor(s);
  if (std::abs(screen) <= screening_tolerance) {
    throw SingularMediumError(
        "refractive index pole: |1 - (4 pi / 3) S| = " + fmt(std::abs(screen)) +
        " <= " + fmt(screening_tolerance) + " at S = " + fmt(screening_sum(s)));
  }
  RefractiveIndex r;
  r.n_squared = (1.0 + eight_pi_over_3 * screening_sum(s)) / screen;
  if (r.n_squared >= 0.0) {
    r.value = {std::sqrt(r.n_squared), 0.0};
    r.evanescent = false;
  } else {
    r.value = {0.0, std::sqrt(-r.n_squared)};
    r.evanescent = true;
  }
  return r;
}

double nonlinear_potential(const MediumSample& s, double rabi_sq,
                           double bare_detuning, PotentialMode mode) {
  check_sample(s);
  if (!std::isfinite(rabi_sq) || rabi_sq < 0.0) {
    throw DomainError("nonlinear_potential: rabi_sq must be >= 0 and finite, got " +
                      fmt(rabi_sq));
  }
  if (!std::isfinite(bare_detuning) || bare_detuning == 0.0) {
    throw DomainError("nonlinear_potential: bare detuning must be nonzero and finite");
  }
  const double base = potential_base(rabi_sq, bare_detuning);
  if (mode == PotentialMode::expanded) {
    return potential_expanded_from(base, screening_sum(s));
  }
  const double screen = screening_factor(s);
  if (std::abs(screen) <= screening_tolerance) {
    throw SingularDetuningError(
        "local detuning zero: |1 - (4 pi / 3) S| = " + fmt(std::abs(screen)) +
        " <= " + fmt(screening_tolerance) + "; full potential diverges");
  }
  return potential_full_from(base, screen);
}

}  // namespace bec2
