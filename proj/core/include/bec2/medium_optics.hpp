#pragma once

#include <complex>
#include <numbers>

#include "bec2/params.hpp"

namespace bec2 {

inline constexpr double four_pi = 4.0 * std::numbers::pi;
inline constexpr double four_pi_over_3 = 4.0 * std::numbers::pi / 3.0;
inline constexpr double eight_pi_over_3 = 8.0 * std::numbers::pi / 3.0;

// |1 - (4 pi / 3) S| below this counts as sitting on the medium pole.
inline constexpr double screening_tolerance = 1e-12;

// One point of the medium: local densities with the species polarizabilities.
struct MediumSample {
  double density_1 = 0.0;
  double density_2 = 0.0;
  double alpha_1 = 0.0;
  double alpha_2 = 0.0;

  static MediumSample from(const Mixture& m);
  bool operator==(const MediumSample&) const = default;
};

// S = alpha_1 rho_1 + alpha_2 rho_2, the polarizability-weighted density.
inline double screening_sum(const MediumSample& s) {
  return s.alpha_1 * s.density_1 + s.alpha_2 * s.density_2;
}

// 1 - (4 pi / 3) S. Equal to 1 + V_1 rho_1 + V_2 rho_2 up to rounding; the
// local-field correction divides by powers of this factor, so its zero is the
// medium pole.
inline double screening_factor(const MediumSample& s) {
  return 1.0 - four_pi_over_3 * screening_sum(s);
}

// Local detuning after the Lorentz-Lorenz correction:
//   Delta_loc = Delta (1 - (4 pi / 3)(alpha_1 rho_1 + alpha_2 rho_2)).
// Vanishes when the local field shifts the transition into resonance.
double local_detuning(const MediumSample& s, double bare_detuning);

// Dielectric susceptibility of the corrected medium,
//   chi = S / (1 - (4 pi / 3) S).
// Throws SingularMediumError within screening_tolerance of the pole.
double susceptibility(const MediumSample& s);

struct RefractiveIndex {
  double n_squared = 1.0;
  std::complex<double> value{1.0, 0.0};  // principal square root
  bool evanescent = false;               // n_squared < 0: field decays, no propagation
};

// Effective refractive index in Maxwell-Garnett form,
//   n^2 = (1 + (8 pi / 3) S) / (1 - (4 pi / 3) S) = 1 + 4 pi chi.
// Throws SingularMediumError at the pole.
RefractiveIndex refractive_index(const MediumSample& s);

enum class PotentialMode { full, expanded };

// Shared pieces of the optical potential. potential_base is the bare
// light-shift scale hbar |Omega|^2 / (4 Delta); the two modes multiply it by
// 1/screen^2 (full local-field resummation) or 1 + (8 pi / 3) S (first-order
// expansion). Both reduce to the base bitwise in vacuum.
inline double potential_base(double rabi_sq, double bare_detuning) {
  return hbar * rabi_sq / (4.0 * bare_detuning);
}
inline double potential_full_from(double base, double screen) {
  return base / (screen * screen);
}
inline double potential_expanded_from(double base, double ssum) {
  return base * (1.0 + eight_pi_over_3 * ssum);
}

// Mean-field optical potential for a species with detuning `bare_detuning`
// sitting in the sampled medium. rabi_sq is |Omega_j^+|^2 >= 0 at the point
// of interest. Throws SingularDetuningError when mode == full and the local
// detuning sits on its zero, DomainError for invalid arguments.
double nonlinear_potential(const MediumSample& s, double rabi_sq,
                           double bare_detuning, PotentialMode mode);

}  // namespace bec2
