#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bec2/errors.hpp"
#include "bec2/fft.hpp"

using namespace bec2;

namespace {

// Fixed linear congruential fill; deterministic and implementation-free.
std::vector<std::complex<double>> pseudo_random(int n) {
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
  std::uint64_t s = 0x9e3779b97f4a7c15ULL;
  auto next = [&s] {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(s >> 11) * 0x1.0p-53 - 0.5;
  };
  for (auto& v : out) v = {next(), next()};
  return out;
}

std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double phase = -2.0 * std::numbers::pi * static_cast<double>(j * k) /
                           static_cast<double>(n);
      acc += x[j] * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace

TEST_SUITE("fft") {

TEST_CASE("power of two detection") {
  CHECK(is_power_of_two(2));
  CHECK(is_power_of_two(1024));
  CHECK_FALSE(is_power_of_two(0));
  CHECK_FALSE(is_power_of_two(-4));
  CHECK_FALSE(is_power_of_two(48));
}

TEST_CASE("constructor rejects bad sizes") {
  CHECK_THROWS_AS(Fft(0), DomainError);
  CHECK_THROWS_AS(Fft(1), DomainError);
  CHECK_THROWS_AS(Fft(12), DomainError);
  CHECK_NOTHROW(Fft(16));
}

TEST_CASE("delta transforms to a flat spectrum") {
  Fft fft(8);
  std::vector<std::complex<double>> x(8, 0.0);
  x[0] = 1.0;
  fft.forward(x);
  for (const auto& v : x) {
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("constant transforms to the zero bin") {
  Fft fft(16);
  std::vector<std::complex<double>> x(16, 1.0);
  fft.forward(x);
  CHECK(x[0].real() == doctest::Approx(16.0).epsilon(1e-14));
  for (std::size_t k = 1; k < 16; ++k) CHECK(std::abs(x[k]) < 1e-13);
}

TEST_CASE("pure mode lands in its bin") {
  const int n = 32;
  Fft fft(n);
  std::vector<std::complex<double>> x(n);
  for (int j = 0; j < n; ++j) {
    const double phase = 2.0 * std::numbers::pi * 3.0 * j / n;
    x[static_cast<std::size_t>(j)] = {std::cos(phase), std::sin(phase)};
  }
  fft.forward(x);
  CHECK(std::abs(x[3] - std::complex<double>(n, 0.0)) < 1e-12);
  for (int k = 0; k < n; ++k) {
    if (k != 3) CHECK(std::abs(x[static_cast<std::size_t>(k)]) < 1e-12);
  }
}

TEST_CASE("matches the naive DFT") {
  const int n = 64;
  Fft fft(n);
  std::vector<std::complex<double>> x = pseudo_random(n);
  const std::vector<std::complex<double>> expected = naive_dft(x);
  fft.forward(x);
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    worst = std::max(worst, std::abs(x[k] - expected[k]));
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("inverse undoes forward") {
  const int n = 256;
  Fft fft(n);
  const std::vector<std::complex<double>> original = pseudo_random(n);
  std::vector<std::complex<double>> x = original;
  fft.forward(x);
  fft.inverse(x);
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    worst = std::max(worst, std::abs(x[k] - original[k]));
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("Parseval") {
  const int n = 128;
  Fft fft(n);
  std::vector<std::complex<double>> x = pseudo_random(n);
  double direct = 0.0;
  for (const auto& v : x) direct += std::norm(v);
  fft.forward(x);
  double spectral = 0.0;
  for (const auto& v : x) spectral += std::norm(v);
  CHECK(spectral / n == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("size mismatch is rejected") {
  Fft fft(8);
  std::vector<std::complex<double>> x(4, 1.0);
  CHECK_THROWS_AS(fft.forward(x), DomainError);
}

}  // TEST_SUITE
