#include "bec2/propagator.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace bec2 {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Full-mode screening zeros are detected against this bound; by 1e-9 the
// potential has grown by 1e18 and the step is meaningless anyway.
constexpr double evolution_screen_tolerance = 1e-9;

void validate_evolve_config(const EvolveConfig& cfg, bool for_stepping) {
  std::vector<std::string> violations;
  if (cfg.steps < 0) {
    violations.push_back("steps must be >= 0, got " + std::to_string(cfg.steps));
  }
  if (!std::isfinite(cfg.dz) || cfg.dz < 0.0 || (for_stepping && cfg.dz == 0.0)) {
    violations.push_back("dz must be positive and finite, got " + fmt(cfg.dz));
  }
  if (cfg.observer_stride < 0) {
    violations.push_back("observer_stride must be >= 0, got " +
                         std::to_string(cfg.observer_stride));
  }
  collect_field_violations(cfg.field, violations);
  collect_mixture_violations(cfg.mixture, violations);
  if (!violations.empty()) {
    std::string what = "invalid evolve configuration:";
    for (const auto& v : violations) what += "\n  " + v;
    throw ValidationError(what, std::move(violations));
  }
}

}  // namespace

Propagator::Propagator(const EvolveConfig& cfg, const MatterState& prototype)
    : cfg_(cfg), fft_(prototype.n_points) {
  validate_evolve_config(cfg, false);
  validate_state(prototype);
  for (int j = 0; j < 2; ++j) {
    alpha_[j] = polarizability(cfg_.mixture.species[j], j);
    dt_[j] = cfg_.dz / cfg_.mixture.species[j].group_velocity;
  }
  const int n = prototype.n_points;
  const double klat = cfg_.field.refractive_index * cfg_.field.vacuum_wavenumber;
  cos2_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double c = std::cos(klat * prototype.y(i));
    cos2_[i] = c * c;
  }
  const double dk = 2.0 * std::numbers::pi / (n * prototype.dy);
  for (int j = 0; j < 2; ++j) {
    kinetic_phase_[j].resize(static_cast<std::size_t>(n));
    const double m = cfg_.mixture.species[j].mass;
    for (int i = 0; i < n; ++i) {
      const int shifted = i < n / 2 ? i : i - n;
      const double k = dk * shifted;
      const double phase = -hbar * k * k * dt_[j] / (2.0 * m);
      kinetic_phase_[j][i] = {std::cos(phase), std::sin(phase)};
    }
  }
}

void Propagator::half_kick(MatterState& state, double z_env) const {
  const double zw = z_env / cfg_.field.envelope_width;
  const double env = std::exp(-zw * zw);
  const double osq0 = cfg_.field.peak_rabi[0] * cfg_.field.peak_rabi[0] * env;
  const double osq1 = cfg_.field.peak_rabi[1] * cfg_.field.peak_rabi[1] * env;
  const double d0 = cfg_.mixture.species[0].detuning;
  const double d1 = cfg_.mixture.species[1].detuning;
  const double half0 = 0.5 * dt_[0];
  const double half1 = 0.5 * dt_[1];
  const bool full = cfg_.mode == PotentialMode::full;
  auto* p0 = state.psi[0].data();
  auto* p1 = state.psi[1].data();
  for (int i = 0; i < state.n_points; ++i) {
    const double rho1 = std::norm(p0[i]);
    const double rho2 = std::norm(p1[i]);
    const double ssum = alpha_[0] * rho1 + alpha_[1] * rho2;
    const double screen = 1.0 - four_pi_over_3 * ssum;
    double u0, u1;
    if (full) {
      if (std::abs(screen) <= evolution_screen_tolerance) {
        throw SingularDetuningError(
            "local detuning crossed zero during full-mode propagation at grid index " +
            std::to_string(i) + " (y = " + fmt(state.y(i)) + ", z = " + fmt(state.z) +
            "): |1 - (4 pi / 3) S| = " + fmt(std::abs(screen)),
            i);
      }
      u0 = potential_full_from(potential_base(osq0 * cos2_[i], d0), screen);
      u1 = potential_full_from(potential_base(osq1 * cos2_[i], d1), screen);
    } else {
      u0 = potential_expanded_from(potential_base(osq0 * cos2_[i], d0), ssum);
      u1 = potential_expanded_from(potential_base(osq1 * cos2_[i], d1), ssum);
    }
    const double ph0 = -u0 * half0 / hbar;
    const double ph1 = -u1 * half1 / hbar;
    p0[i] *= std::complex<double>(std::cos(ph0), std::sin(ph0));
    p1[i] *= std::complex<double>(std::cos(ph1), std::sin(ph1));
  }
}

void Propagator::step(MatterState& state) const {
  if (state.n_points != fft_.size()) {
    throw ValidationError("Propagator::step: state grid does not match the plan");
  }
  const double dz = cfg_.dz;
  half_kick(state, state.z + 0.25 * dz);
  if (cfg_.kinetic) {
    for (int j = 0; j < 2; ++j) {
      fft_.forward(state.psi[j]);
      auto* p = state.psi[j].data();
      const auto* k = kinetic_phase_[j].data();
      for (int i = 0; i < state.n_points; ++i) p[i] *= k[i];
      fft_.inverse(state.psi[j]);
    }
  }
  half_kick(state, state.z + 0.75 * dz);
  state.z += dz;
  double total = 0.0;
  for (int j = 0; j < 2; ++j) {
    for (const auto& c : state.psi[j]) total += std::norm(c);
  }
  if (!std::isfinite(total)) {
    throw NumericBlowupError("non-finite amplitudes after step to z = " + fmt(state.z));
  }
}

std::array<double, 2> Propagator::adiabaticity(const MatterState& state) const {
  const double zw = state.z / cfg_.field.envelope_width;
  const double env = std::exp(-zw * zw);
  std::array<double, 2> worst{0.0, 0.0};
  for (int i = 0; i < state.n_points; ++i) {
    const double rho1 = std::norm(state.psi[0][i]);
    const double rho2 = std::norm(state.psi[1][i]);
    const double screen =
        1.0 - four_pi_over_3 * (alpha_[0] * rho1 + alpha_[1] * rho2);
    for (int j = 0; j < 2; ++j) {
      const double omega = cfg_.field.peak_rabi[j];
      const double rabi = omega * omega * env * cos2_[i];
      const double dloc = cfg_.mixture.species[j].detuning * screen;
      const double ratio = rabi / (4.0 * dloc * dloc);
      worst[j] = std::max(worst[j], ratio);
    }
  }
  return worst;
}

std::array<double, 2> Propagator::phase_per_step(const MatterState& state) const {
  std::array<double, 2> worst{0.0, 0.0};
  for (int i = 0; i < state.n_points; ++i) {
    const double rho1 = std::norm(state.psi[0][i]);
    const double rho2 = std::norm(state.psi[1][i]);
    const double ssum = alpha_[0] * rho1 + alpha_[1] * rho2;
    const double screen = 1.0 - four_pi_over_3 * ssum;
    for (int j = 0; j < 2; ++j) {
      const double omega = cfg_.field.peak_rabi[j];
      const double rabi = omega * omega * cos2_[i];
      const double base = potential_base(rabi, cfg_.mixture.species[j].detuning);
      const double u = cfg_.mode == PotentialMode::full
                           ? (std::abs(screen) <= evolution_screen_tolerance
                                  ? std::numeric_limits<double>::infinity()
                                  : potential_full_from(base, screen))
                           : potential_expanded_from(base, ssum);
      worst[j] = std::max(worst[j], std::abs(u) * dt_[j]);
    }
  }
  return worst;
}

MatterState step(const MatterState& state, const EvolveConfig& cfg) {
  validate_evolve_config(cfg, true);
  Propagator prop(cfg, state);
  MatterState out = state;
  prop.step(out);
  return out;
}

EvolveResult evolve(const MatterState& initial, const EvolveConfig& cfg,
                    const std::vector<EvolveObserver>& observers,
                    const std::function<bool()>& cancelled) {
  validate_evolve_config(cfg, cfg.steps > 0);
  validate_state(initial);

  EvolveResult result;
  result.state = initial;
  Propagator prop(cfg, initial);

  const auto phase = prop.phase_per_step(result.state);
  const double worst_phase = std::max(phase[0], phase[1]);
  if (worst_phase > 0.5) {
    result.warnings.push_back(
        "potential phase per step reaches " + fmt(worst_phase) +
        " rad (> 0.5); decrease dz or the step count is too coarse");
  }

  int last_recorded = -1;
  auto record = [&](int k) {
    const MatterState& s = result.state;
    SeriesRecord rec;
    rec.step = k;
    rec.z = s.z;
    for (int j = 0; j < 2; ++j) {
      rec.time[j] = s.z / cfg.mixture.species[j].group_velocity;
      rec.norm[j] = s.norm(j);
    }
    rec.adiabaticity = prop.adiabaticity(s);
    result.series.push_back(rec);
    for (const auto& obs : observers) {
      if (obs) obs(s, k);
    }
    last_recorded = k;
  };

  record(0);
  for (int k = 1; k <= cfg.steps; ++k) {
    if (cancelled && cancelled()) {
      result.completed = false;
      break;
    }
    prop.step(result.state);
    result.steps_done = k;
    if (cfg.observer_stride > 0 && k % cfg.observer_stride == 0 && k != cfg.steps) {
      record(k);
    }
  }
  if (result.steps_done != last_recorded) record(result.steps_done);
  return result;
}

ExcitedFraction excited_state_diagnostic(const MatterState& state,
                                         const EvolveConfig& cfg) {
  validate_evolve_config(cfg, false);
  validate_state(state);
  const double alpha0 = polarizability(cfg.mixture.species[0], 0);
  const double alpha1 = polarizability(cfg.mixture.species[1], 1);
  const double klat = cfg.field.refractive_index * cfg.field.vacuum_wavenumber;
  const double zw = state.z / cfg.field.envelope_width;
  const double env = std::exp(-zw * zw);

  ExcitedFraction out;
  for (int j = 0; j < 2; ++j) {
    out.density[j].assign(static_cast<std::size_t>(state.n_points), 0.0);
  }
  std::array<double, 2> excited{0.0, 0.0};
  std::array<double, 2> ground{0.0, 0.0};
  for (int i = 0; i < state.n_points; ++i) {
    const double c = std::cos(klat * state.y(i));
    const double rho1 = std::norm(state.psi[0][i]);
    const double rho2 = std::norm(state.psi[1][i]);
    const double screen = 1.0 - four_pi_over_3 * (alpha0 * rho1 + alpha1 * rho2);
    const double rho[2] = {rho1, rho2};
    for (int j = 0; j < 2; ++j) {
      const double omega = cfg.field.peak_rabi[j];
      const double rabi = omega * omega * env * (c * c);
      const double dloc = cfg.mixture.species[j].detuning * screen;
      const double ratio = rabi / (4.0 * dloc * dloc);
      out.density[j][i] = ratio * rho[j];
      excited[j] += out.density[j][i];
      ground[j] += rho[j];
    }
  }
  for (int j = 0; j < 2; ++j) {
    out.fraction[j] = ground[j] > 0.0 ? excited[j] / ground[j] : 0.0;
  }
  return out;
}

std::array<std::vector<MomentumBin>, 2> momentum_spectrum(const MatterState& state) {
  validate_state(state);
  const int n = state.n_points;
  const Fft fft(n);
  const double dk = 2.0 * std::numbers::pi / (n * state.dy);
  std::array<std::vector<MomentumBin>, 2> out;
  for (int j = 0; j < 2; ++j) {
    std::vector<std::complex<double>> buf = state.psi[j];
    fft.forward(buf);
    out[j].resize(static_cast<std::size_t>(n));
    for (int shifted = -n / 2; shifted < n / 2; ++shifted) {
      const int bin = shifted >= 0 ? shifted : shifted + n;
      out[j][static_cast<std::size_t>(shifted + n / 2)] = {
          dk * shifted, std::norm(buf[static_cast<std::size_t>(bin)]) * state.dy / n};
    }
  }
  return out;
}

std::optional<OrderWeights> order_weights(const MatterState& state,
                                          double refractive_index,
                                          double vacuum_wavenumber, int max_order) {
  validate_state(state);
  if (max_order < 0) throw DomainError("order_weights: max_order must be >= 0");
  if (!std::isfinite(refractive_index) || refractive_index <= 0.0 ||
      !std::isfinite(vacuum_wavenumber) || vacuum_wavenumber <= 0.0) {
    throw DomainError("order_weights: refractive_index and vacuum_wavenumber must be positive");
  }
  const int n = state.n_points;
  const double bins_real =
      state.length() * refractive_index * vacuum_wavenumber / std::numbers::pi;
  const long bins = std::lround(bins_real);
  if (bins < 1 || std::abs(bins_real - static_cast<double>(bins)) >
                      1e-9 * std::max(1.0, std::abs(bins_real))) {
    return std::nullopt;
  }
  OrderWeights out;
  out.bins_per_order = static_cast<int>(bins);
  out.q_limit = max_order;
  if (static_cast<long>(out.q_limit) * bins > n / 2 - 1) {
    out.q_limit = static_cast<int>((n / 2 - 1) / bins);
  }
  const Fft fft(n);
  for (int j = 0; j < 2; ++j) {
    std::vector<std::complex<double>> buf = state.psi[j];
    fft.forward(buf);
    const double norm = state.norm(j);
    out.weights[j].reserve(2 * static_cast<std::size_t>(out.q_limit) + 1);
    for (int q = -out.q_limit; q <= out.q_limit; ++q) {
      const long raw = static_cast<long>(q) * bins;
      const int bin = static_cast<int>(((raw % n) + n) % n);
      const double w = std::norm(buf[static_cast<std::size_t>(bin)]) * state.dy / n;
      out.weights[j].emplace_back(q, norm > 0.0 ? w / norm : 0.0);
    }
  }
  return out;
}

}  // namespace bec2
