#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "rsse/tridiagonal.hpp"

namespace {

using rsse::SymmetricTridiagonal;

// Dense cyclic Jacobi rotation: independent oracle for small matrices.
std::vector<double> jacobi_eigenvalues(const SymmetricTridiagonal& t) {
  const std::size_t n = t.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = t.diagonal[i];
    if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = t.off_diagonal[i];
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double tt = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(tt * tt + 1.0);
        const double sn = tt * cs;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = cs * akp - sn * akq;
          a[k][q] = sn * akp + cs * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = cs * apk - sn * aqk;
          a[q][k] = sn * apk + cs * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

SymmetricTridiagonal random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  SymmetricTridiagonal t;
  for (std::size_t i = 0; i < n; ++i) t.diagonal.push_back(u(rng));
  for (std::size_t i = 0; i + 1 < n; ++i) t.off_diagonal.push_back(u(rng));
  return t;
}

TEST(Tridiagonal, SturmCountMatchesDenseSpectrum) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_matrix(rng, 12);
    const auto eig = jacobi_eigenvalues(t);
    for (std::size_t k = 0; k + 1 < eig.size(); ++k) {
      const double between = 0.5 * (eig[k] + eig[k + 1]);
      EXPECT_EQ(rsse::count_eigenvalues_below(t, between), k + 1);
    }
    EXPECT_EQ(rsse::count_eigenvalues_below(t, eig.front() - 1.0), 0u);
  }
}

TEST(Tridiagonal, LowestEigenpairsAgreeWithJacobiOracle) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_matrix(rng, 15);
    const auto eig = jacobi_eigenvalues(t);
    const auto pairs = rsse::lowest_eigenpairs(t, 6);
    for (std::size_t k = 0; k < 6; ++k) {
      EXPECT_NEAR(pairs.values[k], eig[k], 1e-12);
      EXPECT_LT(pairs.residuals[k], 1e-12);
    }
    for (std::size_t a = 0; a < 6; ++a) {
      for (std::size_t b = 0; b < 6; ++b) {
        double dot = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) dot += pairs.vectors[a][i] * pairs.vectors[b][i];
        EXPECT_NEAR(dot, a == b ? 1.0 : 0.0, 1e-10);
      }
    }
  }
}

TEST(Tridiagonal, DiscreteLaplacianHasClosedFormSpectrum) {
  const std::size_t n = 400;
  SymmetricTridiagonal t{std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0)};
  const auto pairs = rsse::lowest_eigenpairs(t, 8);
  for (std::size_t k = 0; k < 8; ++k) {
    const double exact = 2.0 - 2.0 * std::cos((k + 1) * std::numbers::pi / (n + 1));
    EXPECT_NEAR(pairs.values[k], exact, 1e-13);
    EXPECT_FALSE(pairs.degenerate[k]);
  }
}

TEST(Tridiagonal, NearlyDecoupledBlocksAreFlaggedAndOrthogonal) {
  // Two identical blocks coupled by 1e-300: eigenvalues coincide to rounding.
  SymmetricTridiagonal t{{1.0, 2.0, 1.0, 2.0}, {0.5, 1e-300, 0.5}};
  const auto pairs = rsse::lowest_eigenpairs(t, 2);
  EXPECT_NEAR(pairs.values[0], pairs.values[1], 1e-14);
  EXPECT_TRUE(pairs.degenerate[1]);
  double dot = 0.0;
  for (std::size_t i = 0; i < 4; ++i) dot += pairs.vectors[0][i] * pairs.vectors[1][i];
  EXPECT_NEAR(dot, 0.0, 1e-10);
}

TEST(Tridiagonal, RejectsBadRequests) {
  SymmetricTridiagonal t{{1.0, 2.0}, {0.1}};
  EXPECT_THROW(rsse::lowest_eigenpairs(t, 0), rsse::DomainError);
  EXPECT_THROW(rsse::lowest_eigenpairs(t, 3), rsse::DomainError);
  SymmetricTridiagonal bad{{1.0, 2.0}, {}};
  EXPECT_THROW(rsse::lowest_eigenpairs(bad, 1), rsse::DomainError);
}

}  // namespace
