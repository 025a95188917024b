#include "bec2/raman_nath.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "bec2/bessel.hpp"
#include "bec2/medium_optics.hpp"

namespace bec2 {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double coupling_strength(const Species& s, const FieldConfig& f, int species_index) {
  std::vector<std::string> violations;
  collect_species_violations(s, species_index, violations);
  collect_field_violations(f, violations);
  if (!violations.empty()) {
    std::string what = "coupling_strength: invalid inputs:";
    for (const auto& v : violations) what += "\n  " + v;
    throw ValidationError(what, std::move(violations));
  }
  const double omega = s.peak_rabi;
  return (omega * omega / (16.0 * s.detuning)) * (f.envelope_width / s.group_velocity) *
         std::sqrt(std::numbers::pi);
}

double tau_parameter(double g, const Mixture& m) {
  if (!std::isfinite(g)) throw DomainError("tau_parameter: coupling must be finite");
  const MediumSample sample = MediumSample::from(m);
  const double screen = screening_factor(sample);
  if (std::abs(screen) <= screening_tolerance) {
    throw SingularDetuningError(
        "tau_parameter: local detuning zero, |1 + V1 rho1 + V2 rho2| = " +
        fmt(std::abs(screen)));
  }
  return 2.0 * g / (screen * screen);
}

int default_max_order(double tau) {
  if (!std::isfinite(tau)) throw DomainError("default_max_order: tau must be finite");
  return static_cast<int>(std::ceil(std::abs(tau))) + 20;
}

std::vector<std::pair<int, double>> order_probabilities(double tau, int max_order) {
  if (max_order < 0) {
    throw DomainError("order_probabilities: max_order must be >= 0, got " +
                      std::to_string(max_order));
  }
  const std::vector<double> j = bessel_j_array(std::abs(tau), max_order);
  std::vector<std::pair<int, double>> out;
  out.reserve(2 * static_cast<std::size_t>(max_order) + 1);
  for (int q = -max_order; q <= max_order; ++q) {
    const double v = j[static_cast<std::size_t>(q < 0 ? -q : q)];
    out.emplace_back(q, v * v);
  }
  return out;
}

double diffraction_angle(int order, const Species& s, double refractive_index,
                         double vacuum_wavenumber) {
  if (!std::isfinite(refractive_index) || refractive_index <= 0.0) {
    throw DomainError("diffraction_angle: refractive_index must be positive, got " +
                      fmt(refractive_index));
  }
  if (!std::isfinite(vacuum_wavenumber) || vacuum_wavenumber <= 0.0) {
    throw DomainError("diffraction_angle: vacuum_wavenumber must be positive, got " +
                      fmt(vacuum_wavenumber));
  }
  if (!std::isfinite(s.mass) || s.mass <= 0.0 || !std::isfinite(s.group_velocity) ||
      s.group_velocity <= 0.0) {
    throw DomainError("diffraction_angle: species mass and group_velocity must be positive");
  }
  const double recoil = 2.0 * order * refractive_index * hbar * vacuum_wavenumber;
  return std::atan(recoil / (s.mass * s.group_velocity));
}

DiffractionSpectrum assemble_spectrum(const Mixture& m, const FieldConfig& f,
                                      int max_order) {
  validate_mixture(m);
  validate_field(f);
  DiffractionSpectrum spec;
  spec.refractive_index = f.refractive_index;
  for (int j = 0; j < 2; ++j) {
    spec.coupling[j] = coupling_strength(m.species[j], f, j);
    spec.tau[j] = tau_parameter(spec.coupling[j], m);
  }
  if (max_order < 0) {
    max_order = default_max_order(std::max(std::abs(spec.tau[0]), std::abs(spec.tau[1])));
  }
  spec.max_order = max_order;
  for (int j = 0; j < 2; ++j) {
    const auto probs = order_probabilities(spec.tau[j], max_order);
    spec.lines[j].reserve(probs.size());
    for (const auto& [q, p] : probs) {
      spec.lines[j].push_back(
          {q, p, diffraction_angle(q, m.species[j], f.refractive_index,
                                   f.vacuum_wavenumber)});
    }
  }
  const double p1 = m.species[0].mass * m.species[0].group_velocity;
  const double p2 = m.species[1].mass * m.species[1].group_velocity;
  spec.components_separated = p1 != p2;
  return spec;
}

double wide_packet_threshold(double refractive_index, double vacuum_wavenumber) {
  return 10.0 * 2.0 * std::numbers::pi / (refractive_index * vacuum_wavenumber);
}

FarFieldResult far_field_state(const MatterState& incident, const FarFieldParams& p) {
  validate_state(incident);
  if (!std::isfinite(p.refractive_index) || p.refractive_index <= 0.0 ||
      !std::isfinite(p.vacuum_wavenumber) || p.vacuum_wavenumber <= 0.0) {
    throw DomainError("far_field_state: refractive_index and vacuum_wavenumber must be positive");
  }
  if (!std::isfinite(p.tau[0]) || !std::isfinite(p.tau[1])) {
    throw DomainError("far_field_state: tau must be finite");
  }
  FarFieldResult r{incident, {}};
  if (p.packet_width) {
    const double threshold = wide_packet_threshold(p.refractive_index, p.vacuum_wavenumber);
    if (*p.packet_width < threshold) {
      r.warnings.push_back(
          "packet width " + fmt(*p.packet_width) + " spans fewer than 10 lattice periods (" +
          fmt(threshold) + "); thin-grating orders will overlap");
    }
  }
  const double k2 = 2.0 * p.refractive_index * p.vacuum_wavenumber;
  for (int i = 0; i < incident.n_points; ++i) {
    const double c = std::cos(k2 * incident.y(i));
    for (int j = 0; j < 2; ++j) {
      const double phase = -p.tau[j] * (1.0 + c);
      r.state.psi[j][i] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }
  return r;
}

}  // namespace bec2
