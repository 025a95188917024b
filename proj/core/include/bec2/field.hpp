#pragma once

#include <array>
#include <span>
#include <vector>

#include "bec2/errors.hpp"

namespace bec2 {

// Standing-wave beam with a Gaussian envelope along the propagation axis z.
// The transverse modulation runs along y at the in-medium wavenumber n k_L.
struct FieldConfig {
  double vacuum_wavenumber = 1.0;        // k_L > 0
  double envelope_width = 1.0;           // w_L > 0
  double refractive_index = 1.0;         // n > 0, real (no evanescent propagation)
  std::array<double, 2> peak_rabi{0.0, 0.0};  // Omega_j >= 0

  bool operator==(const FieldConfig&) const = default;
};

void collect_field_violations(const FieldConfig& f, std::vector<std::string>& out);
void validate_field(const FieldConfig& f);

// cos(n k_L y), the standing-wave amplitude factor.
double standing_wave_amplitude(const FieldConfig& f, double y);

// |Omega_j^+|^2 at (y, z):
//   Omega_j^2 exp(-z^2 / w_L^2) cos^2(n k_L y).
// species_index is 0 or 1.
double rabi_sq_profile(const FieldConfig& f, int species_index, double y, double z);

// Scalar Helmholtz defect of sampled field values E_i on a uniform y grid:
//   max_i |E'' + (n k_L)^2 E| / ((n k_L)^2 max|E|)
// with E'' from central differences. Requires at least 4 samples per field
// period 2 pi / (n k_L) (throws ResolutionError otherwise) and at least 3
// samples. Returns 0 for an identically zero field.
double helmholtz_residual(const FieldConfig& f, std::span<const double> samples,
                          double dy);

}  // namespace bec2
