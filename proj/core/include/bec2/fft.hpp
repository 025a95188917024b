#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bec2/errors.hpp"

namespace bec2 {

// In-place iterative radix-2 transform with precomputed twiddles. Grids in
// this project are always powers of two, which keeps the plan trivial and
// the results bit-reproducible across runs.
class Fft {
 public:
  // n must be a power of two >= 2.
  explicit Fft(int n);

  int size() const { return n_; }

  // Unscaled forward transform, X_k = sum_j x_j exp(-2 pi i j k / n).
  void forward(std::span<std::complex<double>> data) const;

  // Inverse with 1/n scaling, so inverse(forward(x)) == x up to rounding.
  void inverse(std::span<std::complex<double>> data) const;

 private:
  int n_;
  std::vector<std::complex<double>> twiddle_;  // exp(-2 pi i t / n), t < n/2
};

bool is_power_of_two(int n);

}  // namespace bec2
