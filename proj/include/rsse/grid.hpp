#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "rsse/errors.hpp"

namespace rsse {

/// Uniform grid r_min, r_min + h, ..., r_max with n points.
struct GridSpec {
  double r_min{0.0};
  double r_max{1.0};
  std::size_t n{16};

  [[nodiscard]] double step() const noexcept {
    return (r_max - r_min) / static_cast<double>(n - 1);
  }
  [[nodiscard]] double at(std::size_t i) const noexcept {
    return r_min + step() * static_cast<double>(i);
  }
  [[nodiscard]] std::vector<double> points() const {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = at(i);
    return r;
  }

  void validate() const {
    if (n < 16) throw DomainError("grid needs at least 16 points");
    if (!(r_min < r_max) || !std::isfinite(r_min) || !std::isfinite(r_max)) {
      throw DomainError("grid requires finite r_min < r_max");
    }
    if (!(step() > 0.0)) throw DomainError("grid step must be positive");
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Composite trapezoidal rule on a uniform grid.
inline double trapezoid(std::span<const double> f, double h) {
  if (f.size() < 2) return 0.0;
  double sum = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
  return sum * h;
}

/// Trapezoidal integral of |psi|^2.
inline double trapezoid_norm2(std::span<const double> psi, double h) {
  std::vector<double> density(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) density[i] = psi[i] * psi[i];
  return trapezoid(density, h);
}

/// Number of sign changes of `psi`, ignoring samples below
/// `rel_threshold * max|psi|` (tails of bound states carry rounding noise).
inline int count_nodes(std::span<const double> psi, double rel_threshold = 1e-9) {
  double peak = 0.0;
  for (double v : psi) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0;
  const double floor = rel_threshold * peak;
  int nodes = 0;
  int last_sign = 0;
  for (double v : psi) {
    if (std::abs(v) <= floor) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

}  // namespace rsse
