#include "bec2/params.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace bec2 {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

double recoil_frequency(double wavenumber, double mass) {
  if (!positive_finite(wavenumber)) {
    throw DomainError("recoil_frequency: wavenumber must be positive, got " + fmt(wavenumber));
  }
  if (!positive_finite(mass)) {
    throw DomainError("recoil_frequency: mass must be positive, got " + fmt(mass));
  }
  return wavenumber * wavenumber / (2.0 * mass);
}

double polarizability(const Species& s, int species_index) {
  if (!std::isfinite(s.detuning) || s.detuning == 0.0) {
    throw DomainError("polarizability: species " + std::to_string(species_index + 1) +
                      " has zero or non-finite detuning (" + fmt(s.detuning) + ")");
  }
  return -(s.dipole_moment * s.dipole_moment) / (hbar * s.detuning);
}

double effective_volume(const Species& s, int species_index) {
  constexpr double four_pi_over_3 = 4.0 * std::numbers::pi / 3.0;
  return -four_pi_over_3 * polarizability(s, species_index);
}

void collect_species_violations(const Species& s, int index,
                                std::vector<std::string>& out) {
  const std::string tag = "species " + std::to_string(index + 1);
  if (!positive_finite(s.mass)) {
    out.push_back(tag + ": mass must be positive and finite, got " + fmt(s.mass));
  }
  if (!std::isfinite(s.detuning) || s.detuning == 0.0) {
    out.push_back(tag + ": detuning must be nonzero and finite, got " + fmt(s.detuning));
  }
  if (!std::isfinite(s.dipole_moment) || s.dipole_moment < 0.0) {
    out.push_back(tag + ": dipole_moment must be >= 0 and finite, got " + fmt(s.dipole_moment));
  }
  if (!positive_finite(s.group_velocity)) {
    out.push_back(tag + ": group_velocity must be positive and finite, got " +
                  fmt(s.group_velocity));
  }
  if (!std::isfinite(s.peak_rabi) || s.peak_rabi < 0.0) {
    out.push_back(tag + ": peak_rabi must be >= 0 and finite, got " + fmt(s.peak_rabi));
  }
}

void collect_mixture_violations(const Mixture& m, std::vector<std::string>& out) {
  for (int j = 0; j < 2; ++j) {
    collect_species_violations(m.species[j], j, out);
    if (!std::isfinite(m.densities[j]) || m.densities[j] < 0.0) {
      out.push_back("density " + std::to_string(j + 1) + " must be >= 0 and finite, got " +
                    fmt(m.densities[j]));
    }
  }
}

void validate_mixture(const Mixture& m) {
  std::vector<std::string> violations;
  collect_mixture_violations(m, violations);
  if (!violations.empty()) {
    std::string what = "invalid mixture:";
    for (const auto& v : violations) what += "\n  " + v;
    throw ValidationError(what, std::move(violations));
  }
}

UnitScales unit_scales(const UnitSystem& units) {
  std::vector<std::string> violations;
  if (!positive_finite(units.reference_wavenumber)) {
    violations.push_back("units.reference_wavenumber must be positive and finite, got " +
                         fmt(units.reference_wavenumber));
  }
  if (!positive_finite(units.reference_frequency)) {
    violations.push_back("units.reference_frequency must be positive and finite, got " +
                         fmt(units.reference_frequency));
  }
  if (!violations.empty()) {
    std::string what = "invalid unit system:";
    for (const auto& v : violations) what += "\n  " + v;
    throw ValidationError(what, std::move(violations));
  }
  const double kr = units.reference_wavenumber;
  const double wr = units.reference_frequency;
  UnitScales k;
  k.wavenumber = 1.0 / kr;
  k.length = kr;
  k.frequency = 1.0 / wr;
  k.time = wr;
  k.velocity = kr / wr;
  k.mass = wr / (kr * kr);
  k.dipole = std::sqrt(kr * kr * kr / wr);
  k.density = 1.0 / (kr * kr * kr);
  return k;
}

Species species_to_internal(const Species& s, const UnitScales& k) {
  Species r = s;
  r.mass = s.mass * k.mass;
  r.detuning = s.detuning * k.frequency;
  r.dipole_moment = s.dipole_moment * k.dipole;
  r.group_velocity = s.group_velocity * k.velocity;
  r.peak_rabi = s.peak_rabi * k.frequency;
  return r;
}

Species species_to_user(const Species& s, const UnitScales& k) {
  Species r = s;
  r.mass = s.mass / k.mass;
  r.detuning = s.detuning / k.frequency;
  r.dipole_moment = s.dipole_moment / k.dipole;
  r.group_velocity = s.group_velocity / k.velocity;
  r.peak_rabi = s.peak_rabi / k.frequency;
  return r;
}

namespace {

void collect_param_violations(const PhysicalParams& p, std::vector<std::string>& out) {
  Mixture m{p.species, p.densities};
  collect_mixture_violations(m, out);
  if (!positive_finite(p.envelope_width)) {
    out.push_back("envelope_width must be positive and finite, got " + fmt(p.envelope_width));
  }
  if (!positive_finite(p.vacuum_wavenumber)) {
    out.push_back("vacuum_wavenumber must be positive and finite, got " +
                  fmt(p.vacuum_wavenumber));
  }
}

}  // namespace

PhysicalParams to_internal(const PhysicalParams& user, const UnitSystem& units) {
  const UnitScales k = unit_scales(units);
  std::vector<std::string> violations;
  collect_param_violations(user, violations);
  if (!violations.empty()) {
    std::string what = "invalid parameters:";
    for (const auto& v : violations) what += "\n  " + v;
    throw ValidationError(what, std::move(violations));
  }
  PhysicalParams r;
  for (int j = 0; j < 2; ++j) {
    r.species[j] = species_to_internal(user.species[j], k);
    r.densities[j] = user.densities[j] * k.density;
  }
  r.envelope_width = user.envelope_width * k.length;
  r.vacuum_wavenumber = user.vacuum_wavenumber * k.wavenumber;
  return r;
}

PhysicalParams to_user(const PhysicalParams& internal, const UnitSystem& units) {
  const UnitScales k = unit_scales(units);
  PhysicalParams r;
  for (int j = 0; j < 2; ++j) {
    r.species[j] = species_to_user(internal.species[j], k);
    r.densities[j] = internal.densities[j] / k.density;
  }
  r.envelope_width = internal.envelope_width / k.length;
  r.vacuum_wavenumber = internal.vacuum_wavenumber / k.wavenumber;
  return r;
}

}  // namespace bec2
