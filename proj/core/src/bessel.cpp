#include "bec2/bessel.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace bec2 {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Starting order for the downward recurrence: comfortably above both the
// requested order and the argument (orders beyond ~|x| decay super-
// exponentially, so the seeded tail converges to the true ratio long before
// reaching q_max).
int start_order(double ax, int q_max) {
  const double m = std::max(static_cast<double>(q_max), std::max(1.0, ax));
  return q_max + 15 + static_cast<int>(std::ceil(std::sqrt(40.0 * m)));
}

}  // namespace

std::vector<double> bessel_j_array(double x, int q_max) {
  if (q_max < 0) {
    throw DomainError("bessel_j_array: q_max must be >= 0, got " + std::to_string(q_max));
  }
  if (!std::isfinite(x) || std::abs(x) > bessel_max_argument) {
    throw DomainError("bessel_j_array: |x| must be <= " + fmt(bessel_max_argument) +
                      ", got " + fmt(x));
  }
  const double ax = std::abs(x);
  std::vector<double> out(static_cast<std::size_t>(q_max) + 1, 0.0);
  // Tiny arguments: J_0 = 1 to machine precision and higher orders underflow
  // anywhere they matter; also keeps 2q/x bounded below.
  if (ax < 1e-250) {
    out[0] = 1.0;
    return out;
  }

  const int top = start_order(ax, q_max);
  std::vector<double> vals(static_cast<std::size_t>(top) + 1, 0.0);
  double above = 0.0;   // J_{q+1}, arbitrary scale fixed by normalization
  double here = 1e-30;  // J_q
  vals[top] = here;
  for (int q = top; q > 0; --q) {
    const double below = (2.0 * q / ax) * here - above;
    above = here;
    here = below;
    if (std::abs(here) > 1e250) {
      here *= 1e-250;
      above *= 1e-250;
      for (int k = q; k <= top; ++k) vals[k] *= 1e-250;
    }
    vals[q - 1] = here;
  }
  double norm = vals[0];
  for (int q = 2; q <= top; q += 2) norm += 2.0 * vals[q];
  for (int q = 0; q <= q_max; ++q) out[q] = vals[q] / norm;
  if (x < 0.0) {
    for (int q = 1; q <= q_max; q += 2) out[q] = -out[q];
  }
  return out;
}

double bessel_j(int q, double x) {
  const int aq = q < 0 ? -q : q;
  const double v = bessel_j_array(x, aq)[aq];
  return (q < 0 && (aq & 1)) ? -v : v;
}

}  // namespace bec2
