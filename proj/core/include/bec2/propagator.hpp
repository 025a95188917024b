#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bec2/fft.hpp"
#include "bec2/field.hpp"
#include "bec2/medium_optics.hpp"
#include "bec2/params.hpp"
#include "bec2/state.hpp"

namespace bec2 {

// Split-step evolution of the coupled mean-field equations. The master
// variable is the packet position z; component j sees the elapsed time
// dz / v_gj per step. Strang splitting with the envelope sampled at the
// half-kick midpoints (z + dz/4, z + 3 dz/4) keeps the scheme second order
// in dz for the time-dependent potential.
struct EvolveConfig {
  double dz = 0.0;  // > 0 when steps > 0
  int steps = 0;    // >= 0; 0 is the identity
  PotentialMode mode = PotentialMode::full;
  bool kinetic = true;
  // Record a time-series sample every observer_stride steps (0 = only the
  // endpoints).
  int observer_stride = 0;
  FieldConfig field;
  Mixture mixture;
};

struct SeriesRecord {
  int step = 0;
  double z = 0.0;
  std::array<double, 2> time{};   // z / v_gj
  std::array<double, 2> norm{};
  // max_y |Omega_j^+|^2 / (4 Delta_loc^2), the adiabatic-elimination small
  // parameter; excited-state population is bounded by this ratio.
  std::array<double, 2> adiabaticity{};
};

struct EvolveResult {
  MatterState state;
  std::vector<SeriesRecord> series;
  std::vector<std::string> warnings;
  bool completed = true;
  int steps_done = 0;
};

// Reusable plan: FFT, lattice table and kinetic phases are built once.
class Propagator {
 public:
  Propagator(const EvolveConfig& cfg, const MatterState& prototype);

  // One Strang step; advances state.z by dz. Throws SingularDetuningError
  // (with grid index) when the full-mode screening factor crosses zero and
  // NumericBlowupError when amplitudes stop being finite.
  void step(MatterState& state) const;

  std::array<double, 2> adiabaticity(const MatterState& state) const;

  // dt1 |U_1| and dt2 |U_2| at the densest point of `state` under the peak
  // envelope; above ~0.5 the phase per step is too coarse to trust.
  std::array<double, 2> phase_per_step(const MatterState& state) const;

 private:
  void half_kick(MatterState& state, double z_env) const;

  EvolveConfig cfg_;
  double alpha_[2];
  double dt_[2];  // dz / v_gj
  std::vector<double> cos2_;
  std::array<std::vector<std::complex<double>>, 2> kinetic_phase_;
  Fft fft_;
};

using EvolveObserver = std::function<void(const MatterState&, int step_index)>;

// Runs cfg.steps Strang steps from `initial`. Observers fire at the same
// cadence as series records. `cancelled` is polled between steps; a true
// return stops the run early with completed = false.
EvolveResult evolve(const MatterState& initial, const EvolveConfig& cfg,
                    const std::vector<EvolveObserver>& observers = {},
                    const std::function<bool()>& cancelled = {});

// Convenience single step.
MatterState step(const MatterState& state, const EvolveConfig& cfg);

struct ExcitedFraction {
  // |phi_ej|^2 = |Omega_j^+ / (2 Delta_loc)|^2 |psi_gj|^2 per grid point.
  std::array<std::vector<double>, 2> density{};
  std::array<double, 2> fraction{};  // excited atoms / ground atoms
};

// Diagnostic for the adiabatic elimination at the current z.
ExcitedFraction excited_state_diagnostic(const MatterState& state,
                                         const EvolveConfig& cfg);

struct MomentumBin {
  double k = 0.0;
  double weight = 0.0;  // |psi_hat|^2 dy / n, sums to the component norm
};

// Momentum-space weights per component, ordered by increasing k.
std::array<std::vector<MomentumBin>, 2> momentum_spectrum(const MatterState& state);

struct OrderWeights {
  // (q, weight / norm) per component for |q| <= q_limit.
  std::array<std::vector<std::pair<int, double>>, 2> weights{};
  int bins_per_order = 0;  // momentum bins between adjacent orders
  int q_limit = 0;
};

// Projects the momentum spectrum onto diffraction orders q at 2 q n k_L.
// Requires the box length to be commensurate with the lattice, i.e.
// L n k_L / pi within 1e-9 of a positive integer; returns nullopt otherwise.
// q_limit is capped so all orders stay below the Nyquist bin.
std::optional<OrderWeights> order_weights(const MatterState& state,
                                          double refractive_index,
                                          double vacuum_wavenumber, int max_order);

}  // namespace bec2
