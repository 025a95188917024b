#include "bec2/field.hpp"

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

}  // namespace

void collect_field_violations(const FieldConfig& f, std::vector<std::string>& out) {
  if (!std::isfinite(f.vacuum_wavenumber) || f.vacuum_wavenumber <= 0.0) {
    out.push_back("field.vacuum_wavenumber must be positive and finite, got " +
                  fmt(f.vacuum_wavenumber));
  }
  if (!std::isfinite(f.envelope_width) || f.envelope_width <= 0.0) {
    out.push_back("field.envelope_width must be positive and finite, got " +
                  fmt(f.envelope_width));
  }
  if (!std::isfinite(f.refractive_index) || f.refractive_index <= 0.0) {
    out.push_back("field.refractive_index must be positive and finite, got " +
                  fmt(f.refractive_index));
  }
  for (int j = 0; j < 2; ++j) {
    if (!std::isfinite(f.peak_rabi[j]) || f.peak_rabi[j] < 0.0) {
      out.push_back("field.peak_rabi[" + std::to_string(j) +
                    "] must be >= 0 and finite, got " + fmt(f.peak_rabi[j]));
    }
  }
}

void validate_field(const FieldConfig& f) {
  std::vector<std::string> violations;
  collect_field_violations(f, violations);
  if (!violations.empty()) {
    std::string what = "invalid field configuration:";
    for (const auto& v : violations) what += "\n  " + v;
    throw ValidationError(what, std::move(violations));
  }
}

double standing_wave_amplitude(const FieldConfig& f, double y) {
  return std::cos(f.refractive_index * f.vacuum_wavenumber * y);
}

double rabi_sq_profile(const FieldConfig& f, int species_index, double y, double z) {
  if (species_index < 0 || species_index > 1) {
    throw DomainError("rabi_sq_profile: species_index must be 0 or 1, got " +
                      std::to_string(species_index));
  }
  validate_field(f);
  const double omega = f.peak_rabi[species_index];
  const double c = standing_wave_amplitude(f, y);
  const double zw = z / f.envelope_width;
  return omega * omega * std::exp(-zw * zw) * (c * c);
}

double helmholtz_residual(const FieldConfig& f, std::span<const double> samples,
                          double dy) {
  validate_field(f);
  if (!std::isfinite(dy) || dy <= 0.0) {
    throw DomainError("helmholtz_residual: dy must be positive, got " + fmt(dy));
  }
  if (samples.size() < 3) {
    throw DomainError("helmholtz_residual: need at least 3 samples, got " +
                      std::to_string(samples.size()));
  }
  const double k = f.refractive_index * f.vacuum_wavenumber;
  const double period = 2.0 * std::numbers::pi / k;
  if (dy > period / 4.0) {
    throw ResolutionError("helmholtz_residual: grid spacing " + fmt(dy) +
                          " exceeds a quarter period " + fmt(period / 4.0) +
                          " of the in-medium oscillation");
  }
  double peak = 0.0;
  for (double v : samples) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  const double k2 = k * k;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const double lap = (samples[i - 1] - 2.0 * samples[i] + samples[i + 1]) / (dy * dy);
    worst = std::max(worst, std::abs(lap + k2 * samples[i]));
  }
  return worst / (k2 * peak);
}

}  // namespace bec2
