#include "bec2/fft.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace bec2 {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Fft::Fft(int n) : n_(n) {
  if (!is_power_of_two(n) || n < 2) {
    throw DomainError("Fft: size must be a power of two >= 2, got " + std::to_string(n));
  }
  twiddle_.resize(static_cast<std::size_t>(n) / 2);
  for (int t = 0; t < n / 2; ++t) {
    const double a = -2.0 * std::numbers::pi * t / n;
    twiddle_[t] = {std::cos(a), std::sin(a)};
  }
}

void Fft::forward(std::span<std::complex<double>> data) const {
  if (static_cast<int>(data.size()) != n_) {
    throw DomainError("Fft::forward: data size " + std::to_string(data.size()) +
                      " does not match plan size " + std::to_string(n_));
  }
  auto* a = data.data();
  for (int i = 1, j = 0; i < n_; ++i) {
    int bit = n_ >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n_; len <<= 1) {
    const int half = len >> 1;
    const int stride = n_ / len;
    for (int block = 0; block < n_; block += len) {
      for (int k = 0; k < half; ++k) {
        const std::complex<double> w = twiddle_[static_cast<std::size_t>(k) * stride];
        const std::complex<double> u = a[block + k];
        const std::complex<double> v = a[block + k + half] * w;
        a[block + k] = u + v;
        a[block + k + half] = u - v;
      }
    }
  }
}

void Fft::inverse(std::span<std::complex<double>> data) const {
  for (auto& c : data) c = std::conj(c);
  forward(data);
  const double scale = 1.0 / n_;
  for (auto& c : data) c = std::conj(c) * scale;
}

}  // namespace bec2
