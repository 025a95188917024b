#pragma once

#include <vector>

#include "bec2/errors.hpp"

namespace bec2 {

// Arguments beyond this are rejected; far outside the thin-grating regime
// and the downward recurrence would need excessive starting orders.
inline constexpr double bessel_max_argument = 700.0;

// J_0(x) .. J_q_max(x) by Miller's downward recurrence with normalization
// against J_0 + 2 sum_k J_2k = 1. Relative accuracy near machine precision
// for |x| <= bessel_max_argument; throws DomainError outside that range or
// for q_max < 0.
std::vector<double> bessel_j_array(double x, int q_max);

// Single order, any sign: J_{-q}(x) = (-1)^q J_q(x).
double bessel_j(int q, double x);

}  // namespace bec2
