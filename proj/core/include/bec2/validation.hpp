#pragma once

#include <functional>
#include <string>
#include <vector>

namespace bec2 {

// One acceptance criterion outcome. `measured` is the worst observed value
// of the tested quantity, compared against `threshold` as described in
// `detail` (some checks also fold in a secondary condition; `detail` then
// reports both).
struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

// Test seams. bessel_array replaces the Bessel evaluator used by the
// completeness check so a fault injected there must turn the check red.
struct ValidationHooks {
  std::function<std::vector<double>(double, int)> bessel_array;
};

/// The full acceptance suite, ids 1..11, in a fixed order. Deterministic:
// repeated runs produce identical results.
std::vector<CheckResult> run_acceptance_checks(const ValidationHooks* hooks = nullptr);

// "[ 7] PASS strang-order ..." one-liner.
std::string format_check_line(const CheckResult& r);

}  // namespace bec2
