#pragma once

// Lowest eigenpairs of a real symmetric tridiagonal matrix: eigenvalues by
// bisection on Sturm-sequence sign counts, eigenvectors by inverse iteration
// with a partially pivoted LU of (T - lambda I).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "rsse/errors.hpp"

namespace rsse {

struct SymmetricTridiagonal {
  std::vector<double> diagonal;
  /// off_diagonal[i] couples rows i and i + 1.
  std::vector<double> off_diagonal;

  [[nodiscard]] std::size_t size() const noexcept { return diagonal.size(); }

  /// y = T x.
  [[nodiscard]] std::vector<double> apply(std::span<const double> x) const {
    const std::size_t n = size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = diagonal[i] * x[i];
      if (i > 0) acc += off_diagonal[i - 1] * x[i - 1];
      if (i + 1 < n) acc += off_diagonal[i] * x[i + 1];
      y[i] = acc;
    }
    return y;
  }

  /// Max-row-sum norm.
  [[nodiscard]] double norm_inf() const noexcept {
    double best = 0.0;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      double row = std::abs(diagonal[i]);
      if (i > 0) row += std::abs(off_diagonal[i - 1]);
      if (i + 1 < n) row += std::abs(off_diagonal[i]);
      best = std::max(best, row);
    }
    return best;
  }

  void validate() const {
    if (diagonal.empty()) throw DomainError("empty tridiagonal matrix");
    if (off_diagonal.size() + 1 != diagonal.size()) {
      throw DomainError("off-diagonal must have exactly one element fewer than the diagonal");
    }
  }
};

/// Gershgorin interval enclosing the whole spectrum.
inline std::pair<double, double> gershgorin_bounds(const SymmetricTridiagonal& t) {
  const std::size_t n = t.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off_diagonal[i - 1]);
    if (i + 1 < n) radius += std::abs(t.off_diagonal[i]);
    lo = std::min(lo, t.diagonal[i] - radius);
    hi = std::max(hi, t.diagonal[i] + radius);
  }
  return {lo, hi};
}

/// Number of eigenvalues strictly below x (negative pivots of the LDL^T
/// factorization of T - x I).
inline std::size_t count_eigenvalues_below(const SymmetricTridiagonal& t, double x) {
  const std::size_t n = t.size();
  double max_off2 = 0.0;
  for (double e : t.off_diagonal) max_off2 = std::max(max_off2, e * e);
  const double pivmin =
      std::numeric_limits<double>::min() * std::max(1.0, max_off2);

  std::size_t count = 0;
  double q = t.diagonal[0] - x;
  for (std::size_t i = 0;; ++i) {
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    if (i + 1 == n) break;
    const double e = t.off_diagonal[i];
    q = t.diagonal[i + 1] - x - e * e / q;
  }
  return count;
}

/// The j-th smallest eigenvalue (0-based).
inline double kth_eigenvalue(const SymmetricTridiagonal& t, std::size_t j) {
  auto [lo, hi] = gershgorin_bounds(t);
  const double scale = std::max(std::abs(lo), std::abs(hi));
  lo -= 1e-14 * scale + std::numeric_limits<double>::min();
  hi += 1e-14 * scale + std::numeric_limits<double>::min();
  const double eps = std::numeric_limits<double>::epsilon();
  for (int it = 0; it < 4096; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi)) || mid == lo ||
        mid == hi) {
      break;
    }
    (count_eigenvalues_below(t, mid) > j ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace detail {

/// Partially pivoted LU of a general tridiagonal matrix (LAPACK dgttrf layout).
class TridiagonalLu {
 public:
  TridiagonalLu(const SymmetricTridiagonal& t, double shift) {
    const std::size_t n = t.size();
    d_.resize(n);
    for (std::size_t i = 0; i < n; ++i) d_[i] = t.diagonal[i] - shift;
    dl_ = t.off_diagonal;
    du_ = t.off_diagonal;
    du2_.assign(n > 2 ? n - 2 : 0, 0.0);
    swapped_.assign(n > 1 ? n - 1 : 0, false);

    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (d_[i] != 0.0) {
          const double fact = dl_[i] / d_[i];
          dl_[i] = fact;
          d_[i + 1] -= fact * du_[i];
        }
      } else {
        const double fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const double temp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = temp - fact * d_[i + 1];
        if (i + 2 < n) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        swapped_[i] = true;
      }
    }
    // Exactly singular pivots are nudged; inverse iteration only needs a
    // nonsingular, nearly singular factor.
    const double tiny = std::numeric_limits<double>::epsilon() *
                        std::max(t.norm_inf(), std::numeric_limits<double>::min());
    for (double& pivot : d_) {
      if (std::abs(pivot) < tiny) pivot = std::copysign(tiny, pivot == 0.0 ? 1.0 : pivot);
    }
  }

  void solve_in_place(std::span<double> b) const {
    const std::size_t n = d_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double temp = b[i] - dl_[i] * b[i + 1];
        b[i] = b[i + 1];
        b[i + 1] = temp;
      }
    }
    b[n - 1] /= d_[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (std::size_t k = n; k-- > 2;) {
      const std::size_t i = k - 2;
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }
  }

 private:
  std::vector<double> d_, dl_, du_, du2_;
  std::vector<bool> swapped_;
};

inline double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

inline void normalize2(std::span<double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  s = std::sqrt(s);
  for (double& v : x) v /= s;
}

}  // namespace detail

/// ||T x - lambda x||_inf / ||x||_inf.
inline double eigen_residual(const SymmetricTridiagonal& t, std::span<const double> x,
                             double lambda) {
  const auto tx = t.apply(x);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(tx[i] - lambda * x[i]));
  const double xn = detail::max_abs(x);
  return xn > 0.0 ? r / xn : std::numeric_limits<double>::infinity();
}

struct TridiagonalEigenpairs {
  std::vector<double> values;
  /// Unit 2-norm eigenvectors.
  std::vector<std::vector<double>> vectors;
  std::vector<double> residuals;
  /// True when a value lies within 1e-12 (relative) of its predecessor.
  std::vector<bool> degenerate;
};

/// The k smallest eigenpairs of T.
inline TridiagonalEigenpairs lowest_eigenpairs(const SymmetricTridiagonal& t, std::size_t k) {
  t.validate();
  const std::size_t n = t.size();
  if (k < 1 || k > n) throw DomainError("requested eigenpair count out of range");

  const double tnorm = t.norm_inf();
  const double cluster_tol = 1e-3 * tnorm;
  const double converged = 64.0 * std::numeric_limits<double>::epsilon() * tnorm;

  TridiagonalEigenpairs out;
  for (std::size_t j = 0; j < k; ++j) {
    const double lambda = kth_eigenvalue(t, j);
    const detail::TridiagonalLu lu(t, lambda);

    std::vector<double> x(n);
    std::uint64_t state = 0x9E3779B97F4A7C15ULL ^ (j + 1);
    for (double& v : x) {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      v = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    }
    detail::normalize2(x);

    double residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 8; ++it) {
      lu.solve_in_place(x);
      for (std::size_t prev = 0; prev < j; ++prev) {
        if (std::abs(out.values[prev] - lambda) > cluster_tol) continue;
        const auto& y = out.vectors[prev];
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += x[i] * y[i];
        for (std::size_t i = 0; i < n; ++i) x[i] -= dot * y[i];
      }
      detail::normalize2(x);
      residual = eigen_residual(t, x, lambda);
      if (it >= 1 && residual <= converged) break;
    }

    const bool degenerate =
        j > 0 && std::abs(lambda - out.values.back()) <
                     1e-12 * std::max(1.0, std::abs(lambda));
    out.values.push_back(lambda);
    out.vectors.push_back(std::move(x));
    out.residuals.push_back(residual);
    out.degenerate.push_back(degenerate);
  }
  return out;
}

}  // namespace rsse
