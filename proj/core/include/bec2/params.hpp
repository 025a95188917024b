#pragma once

#include <array>
#include <vector>

#include "bec2/errors.hpp"

namespace bec2 {

// Internal unit system: hbar = 1, lengths in 1/k_ref, frequencies in units of
// omega_ref. Everything below params-level conversion assumes internal units.
inline constexpr double hbar = 1.0;

// Constants of one two-level species coupled to the far-detuned beam.
struct Species {
  double mass = 1.0;            // m_j > 0
  double detuning = 1.0;        // Delta_j != 0 (adiabatic elimination divides by it)
  double dipole_moment = 0.0;   // d_j >= 0
  double group_velocity = 1.0;  // v_gj > 0, speed along the beam axis
  double peak_rabi = 0.0;       // Omega_j >= 0, peak Rabi frequency of the standing wave

  bool operator==(const Species&) const = default;
};

// Two-component mixture: species constants plus ground-state number densities.
struct Mixture {
  std::array<Species, 2> species{};
  std::array<double, 2> densities{};  // rho_j >= 0

  bool operator==(const Mixture&) const = default;
};

// Reference scales defining the internal unit system.
struct UnitSystem {
  double reference_wavenumber = 1.0;  // k_ref > 0; internal length unit is 1/k_ref
  double reference_frequency = 1.0;   // omega_ref > 0; internal time unit is 1/omega_ref

  bool operator==(const UnitSystem&) const = default;
};

// Photon recoil frequency k^2 / (2 m) with hbar = 1. The conventional choice
// of reference frequency is the recoil of species 1 at the laser wavenumber.
double recoil_frequency(double wavenumber, double mass);

// Atomic polarizability for the dominant transition,
//   alpha_j = -d_j^2 / (hbar Delta_j).
// Red detuning (Delta < 0) gives alpha > 0. species_index only labels the
// offender in error messages. Throws DomainError on zero detuning.
double polarizability(const Species& s, int species_index = 0);

// Effective volume occupied by one atom's polarization response,
//   V_j = -(4 pi / 3) alpha_j.
double effective_volume(const Species& s, int species_index = 0);

// Appends one message per violated constraint; `index` is 0 or 1.
void collect_species_violations(const Species& s, int index,
                                std::vector<std::string>& out);
void collect_mixture_violations(const Mixture& m, std::vector<std::string>& out);

// Throws ValidationError listing every violation, or returns silently.
void validate_mixture(const Mixture& m);

// Multiplicative factors taking user-unit values to internal units.
// Divide by a factor to go the other way.
struct UnitScales {
  double wavenumber = 1.0;  // 1 / k_ref
  double length = 1.0;      // k_ref
  double frequency = 1.0;   // 1 / omega_ref
  double time = 1.0;        // omega_ref
  double velocity = 1.0;    // k_ref / omega_ref
  double mass = 1.0;        // omega_ref / k_ref^2
  double dipole = 1.0;      // sqrt(k_ref^3 / omega_ref)
  double density = 1.0;     // 1 / k_ref^3
};

// Throws ValidationError if either reference scale is not a positive finite
// number.
UnitScales unit_scales(const UnitSystem& units);

// User-facing physical parameter set. The same struct serves both unit
// systems; to_internal / to_user reinterpret the values.
struct PhysicalParams {
  std::array<Species, 2> species{};
  std::array<double, 2> densities{};
  double envelope_width = 1.0;     // w_L
  double vacuum_wavenumber = 1.0;  // laser k_L

  bool operator==(const PhysicalParams&) const = default;
};

// Converts user-unit parameters to internal units, validating every field.
// Throws ValidationError listing all violations.
PhysicalParams to_internal(const PhysicalParams& user, const UnitSystem& units);
PhysicalParams to_user(const PhysicalParams& internal, const UnitSystem& units);

Species species_to_internal(const Species& s, const UnitScales& k);
Species species_to_user(const Species& s, const UnitScales& k);

}  // namespace bec2
