#include "bec2/state.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "bec2/fft.hpp"

namespace bec2 {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_grid(int n_points, double dy) {
  std::vector<std::string> violations;
  if (!is_power_of_two(n_points) || n_points < 16) {
    violations.push_back("n_points must be a power of two >= 16, got " +
                         std::to_string(n_points));
  }
  if (!std::isfinite(dy) || dy <= 0.0) {
    violations.push_back("dy must be positive and finite, got " + fmt(dy));
  }
  if (!violations.empty()) {
    std::string what = "invalid grid:";
    for (const auto& v : violations) what += "\n  " + v;
    throw ValidationError(what, std::move(violations));
  }
}

}  // namespace

double MatterState::norm(int component) const {
  double s = 0.0;
  for (const auto& c : psi[component]) s += std::norm(c);
  return s * dy;
}

void validate_state(const MatterState& s) {
  std::vector<std::string> violations;
  if (!is_power_of_two(s.n_points) || s.n_points < 16) {
    violations.push_back("n_points must be a power of two >= 16, got " +
                         std::to_string(s.n_points));
  }
  if (!std::isfinite(s.dy) || s.dy <= 0.0) {
    violations.push_back("dy must be positive and finite, got " + fmt(s.dy));
  }
  if (!std::isfinite(s.y0)) violations.push_back("y0 must be finite");
  if (!std::isfinite(s.z)) violations.push_back("z must be finite");
  for (int j = 0; j < 2; ++j) {
    if (static_cast<int>(s.psi[j].size()) != s.n_points) {
      violations.push_back("psi[" + std::to_string(j) + "] has " +
                           std::to_string(s.psi[j].size()) + " samples, expected " +
                           std::to_string(s.n_points));
    }
  }
  if (!violations.empty()) {
    std::string what = "invalid matter state:";
    for (const auto& v : violations) what += "\n  " + v;
    throw ValidationError(what, std::move(violations));
  }
}

MatterState make_uniform_state(int n_points, double dy,
                               std::array<double, 2> densities, double z) {
  check_grid(n_points, dy);
  for (int j = 0; j < 2; ++j) {
    if (!std::isfinite(densities[j]) || densities[j] < 0.0) {
      throw DomainError("make_uniform_state: density " + std::to_string(j + 1) +
                        " must be >= 0 and finite, got " + fmt(densities[j]));
    }
  }
  MatterState s;
  s.n_points = n_points;
  s.dy = dy;
  s.y0 = -0.5 * dy * n_points;
  s.z = z;
  for (int j = 0; j < 2; ++j) {
    s.psi[j].assign(static_cast<std::size_t>(n_points),
                    std::complex<double>(std::sqrt(densities[j]), 0.0));
  }
  return s;
}

MatterState make_gaussian_state(int n_points, double dy,
                                std::array<double, 2> peak_densities,
                                double width, double center, double z) {
  check_grid(n_points, dy);
  if (!std::isfinite(width) || width <= 0.0) {
    throw DomainError("make_gaussian_state: width must be positive and finite, got " +
                      fmt(width));
  }
  for (int j = 0; j < 2; ++j) {
    if (!std::isfinite(peak_densities[j]) || peak_densities[j] < 0.0) {
      throw DomainError("make_gaussian_state: peak density " + std::to_string(j + 1) +
                        " must be >= 0 and finite, got " + fmt(peak_densities[j]));
    }
  }
  MatterState s;
  s.n_points = n_points;
  s.dy = dy;
  s.y0 = -0.5 * dy * n_points;
  s.z = z;
  for (int j = 0; j < 2; ++j) {
    s.psi[j].resize(static_cast<std::size_t>(n_points));
    const double amp = std::sqrt(peak_densities[j]);
    for (int i = 0; i < n_points; ++i) {
      const double u = (s.y(i) - center) / width;
      s.psi[j][i] = {amp * std::exp(-0.5 * u * u), 0.0};
    }
  }
  return s;
}

}  // namespace bec2
