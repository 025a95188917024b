#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bec2/bessel.hpp"
#include "bec2/fft.hpp"
#include "bec2/medium_optics.hpp"
#include "bec2/params.hpp"
#include "bec2/propagator.hpp"
#include "bec2/raman_nath.hpp"
#include "bec2/state.hpp"

namespace {

using namespace bec2;

Mixture mixture() {
  Mixture m;
  m.species[0] = {1.0, 500.0, 1.0, 1.0, 6.0};
  m.species[1] = {1.0, -400.0, 0.8, 1.0, 4.0};
  m.densities = {0.01, 0.02};
  return m;
}

FieldConfig field(const Mixture& m) {
  FieldConfig f;
  f.vacuum_wavenumber = 1.0;
  f.envelope_width = 10.0;
  f.refractive_index = refractive_index(MediumSample::from(m)).value.real();
  f.peak_rabi = {m.species[0].peak_rabi, m.species[1].peak_rabi};
  return f;
}

void BM_BesselArray(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j_array(x, 60));
  }
}
BENCHMARK(BM_BesselArray)->Arg(1)->Arg(10)->Arg(100);

void BM_FftForward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Fft fft(n);
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    buf[static_cast<std::size_t>(i)] = {std::cos(0.1 * i), 0.0};
  }
  for (auto _ : state) {
    fft.forward(buf);
    benchmark::DoNotOptimize(buf.data());
  }
}
BENCHMARK(BM_FftForward)->Arg(256)->Arg(1024)->Arg(4096);

void BM_Susceptibility(benchmark::State& state) {
  const MediumSample s = MediumSample::from(mixture());
  for (auto _ : state) {
    benchmark::DoNotOptimize(susceptibility(s));
  }
}
BENCHMARK(BM_Susceptibility);

void BM_FarFieldProbabilities(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(order_probabilities(5.0, 30));
  }
}
BENCHMARK(BM_FarFieldProbabilities);

void BM_AssembleSpectrum(benchmark::State& state) {
  const Mixture m = mixture();
  const FieldConfig f = field(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_spectrum(m, f, 12));
  }
}
BENCHMARK(BM_AssembleSpectrum);

void BM_SplitStepFull(benchmark::State& state) {
  const Mixture m = mixture();
  const FieldConfig f = field(m);
  const int n = static_cast<int>(state.range(0));
  const double dy = 8.0 * std::numbers::pi / (f.refractive_index * n);
  const MatterState init = make_uniform_state(n, dy, m.densities, -60.0);

  EvolveConfig ec;
  ec.mixture = m;
  ec.field = f;
  ec.dz = 0.1;
  ec.steps = 64;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(init, ec));
  }
}
BENCHMARK(BM_SplitStepFull)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
