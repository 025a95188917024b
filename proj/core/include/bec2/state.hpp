#pragma once

#include <array>
#include <complex>
#include <vector>

#include "bec2/errors.hpp"

namespace bec2 {

// Two-component condensate wavefunctions on a periodic uniform y grid.
// |psi_j|^2 is the number density, so sum |psi_j|^2 dy is the atom count per
// unit transverse area. z tracks the packet position along the beam axis;
// z / v_gj is the elapsed interaction time of component j.
struct MatterState {
  int n_points = 0;    // power of two >= 16
  double dy = 0.0;     // grid spacing > 0
  double y0 = 0.0;     // coordinate of grid point 0
  double z = 0.0;      // packet position along the propagation axis
  std::array<std::vector<std::complex<double>>, 2> psi{};

  double y(int i) const { return y0 + dy * i; }
  double length() const { return dy * n_points; }

  // sum_i |psi_j[i]|^2 dy
  double norm(int component) const;

  bool operator==(const MatterState&) const = default;
};

// Throws ValidationError listing every structural violation.
void validate_state(const MatterState& s);

// Uniform state psi_j = sqrt(rho_j): the incident condensate before the
// light zone. The grid is centered, y0 = -n_points dy / 2.
MatterState make_uniform_state(int n_points, double dy,
                               std::array<double, 2> densities, double z = 0.0);

// Gaussian packets exp(-(y - center)^2 / (2 width^2)) scaled so the peak
// density is rho_j.
MatterState make_gaussian_state(int n_points, double dy,
                                std::array<double, 2> peak_densities,
                                double width, double center = 0.0, double z = 0.0);

}  // namespace bec2
