#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bec2/field.hpp"
#include "bec2/params.hpp"
#include "bec2/state.hpp"

namespace bec2 {

// Closed-form thin-grating diffraction. A component crossing the standing
// wave accumulates the phase tau_j (1 + cos(2 n k_L y)) and splits into even
// momentum orders 2 q n k_L with populations J_q(tau_j)^2.

// Integrated lattice strength of the bare potential,
//   g_j = (Omega_j^2 / (16 Delta_j)) (w_L / v_gj) sqrt(pi).
// Sign follows the detuning.
double coupling_strength(const Species& s, const FieldConfig& f, int species_index = 0);

// Local-field-corrected phase amplitude,
//   tau_j = 2 g_j / (1 + V_1 rho_1 + V_2 rho_2)^2.
// Throws SingularDetuningError when the screening factor sits on zero.
double tau_parameter(double g, const Mixture& m);

// Default truncation order ceil(|tau|) + 20, enough for the population sum
// to reach 1 - 1e-10.
int default_max_order(double tau);

// (q, J_q(tau)^2) for q = -max_order .. max_order.
std::vector<std::pair<int, double>> order_probabilities(double tau, int max_order);

// Deflection angle of order q for one species:
//   alpha_qj = atan(2 q n hbar k_L / (m_j v_gj)).
double diffraction_angle(int order, const Species& s, double refractive_index,
                         double vacuum_wavenumber);

struct SpectrumLine {
  int order = 0;
  double probability = 0.0;
  double angle = 0.0;  // radians

  bool operator==(const SpectrumLine&) const = default;
};

struct DiffractionSpectrum {
  std::array<std::vector<SpectrumLine>, 2> lines{};
  std::array<double, 2> coupling{};  // g_j
  std::array<double, 2> tau{};
  double refractive_index = 1.0;
  int max_order = 0;
  // True when any nonzero order of the two components leaves at different
  // angles, i.e. m_1 v_g1 != m_2 v_g2.
  bool components_separated = false;

  bool operator==(const DiffractionSpectrum&) const = default;
};

// Full analytic spectrum for a mixture in the given field. max_order < 0
// selects default_max_order(max |tau_j|).
DiffractionSpectrum assemble_spectrum(const Mixture& m, const FieldConfig& f,
                                      int max_order = -1);

struct FarFieldParams {
  std::array<double, 2> tau{};
  double refractive_index = 1.0;
  double vacuum_wavenumber = 1.0;
  // Transverse packet width, if known; used only for the validity warning.
  std::optional<double> packet_width;
};

struct FarFieldResult {
  MatterState state;
  std::vector<std::string> warnings;
};

// Applies the accumulated far-zone phase exp(-i tau_j (1 + cos(2 n k_L y)))
// pointwise. Unitary, so per-component norms are preserved. Warns when the
// packet is narrower than wide_packet_threshold (the thin-grating picture
// needs many lattice periods under the envelope).
FarFieldResult far_field_state(const MatterState& incident, const FarFieldParams& p);

// 10 transverse lattice periods, 10 * 2 pi / (n k_L).
double wide_packet_threshold(double refractive_index, double vacuum_wavenumber);

}  // namespace bec2
