#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "rsse/errors.hpp"
#include "rsse/grid.hpp"
#include "rsse/potential.hpp"
#include "rsse/tridiagonal.hpp"
#include "rsse/units.hpp"

namespace rsse {

/// A one-body eigenproblem: a particle of mass `mu` in `potential`, with
/// angular momentum `l` for radial problems. `M` is the total rest mass of
/// the underlying system (equal to `mu` for a single particle).
struct RadialProblem {
  PotentialSpec potential;
  int l{0};
  double mu{1.0};
  double M{1.0};
  UnitSystem units{kAtomicUnits};

  void validate() const {
    rsse::validate(potential);
    if (l < 0) throw DomainError("angular momentum l must be non-negative");
    if (!(mu > 0.0) || !(M > 0.0)) throw DomainError("masses must be positive");
    if (mu > M * (1.0 + 1e-15)) throw DomainError("reduced mass cannot exceed the total mass");
  }

  /// Coulomb problems and l > 0 are solved for u(r) = r R(r).
  [[nodiscard]] bool is_radial() const noexcept { return is_coulomb(potential) || l > 0; }
};

inline RadialProblem make_single_particle(PotentialSpec potential, double mass, int l = 0,
                                          const UnitSystem& units = kAtomicUnits) {
  if (!(mass > 0.0)) throw DomainError("mass must be positive");
  RadialProblem p{std::move(potential), l, mass, mass, units};
  p.validate();
  return p;
}

/// Relative-motion problem of two bodies: mu = m1 m2 / (m1 + m2), M = m1 + m2.
inline RadialProblem reduce_two_body(double m1, double m2, PotentialSpec potential, int l = 0,
                                     const UnitSystem& units = kAtomicUnits) {
  if (!(m1 > 0.0) || !(m2 > 0.0)) throw DomainError("both masses must be positive");
  RadialProblem p{std::move(potential), l, m1 * m2 / (m1 + m2), m1 + m2, units};
  p.validate();
  return p;
}

/// V(r) + hbar^2 l(l+1) / (2 mu r^2).
inline double effective_potential(const RadialProblem& problem, double r) {
  double v = potential_value(problem.potential, r, problem.mu, problem.units);
  if (problem.l > 0) {
    if (r == 0.0) throw DomainError("centrifugal term is singular at r = 0; use r_min > 0");
    const double hbar = problem.units.hbar;
    v += hbar * hbar * problem.l * (problem.l + 1) / (2.0 * problem.mu * r * r);
  }
  return v;
}

inline std::vector<double> effective_potential_samples(const RadialProblem& problem,
                                                       const GridSpec& grid) {
  std::vector<double> v(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) v[i] = effective_potential(problem, grid.at(i));
  return v;
}

inline void validate_setup(const RadialProblem& problem, const GridSpec& grid) {
  problem.validate();
  grid.validate();
  if (problem.is_radial() && grid.r_min < 0.0) {
    throw DomainError("radial problems need r_min >= 0");
  }
  if (problem.is_radial() && grid.r_min == 0.0) {
    throw DomainError(is_coulomb(problem.potential)
                          ? "coulomb potential is singular at r = 0; set a nonzero r_min"
                          : "centrifugal term is singular at r = 0; set a nonzero r_min");
  }
}

/// Finite-difference Hamiltonian on the interior points of `grid`; both grid
/// end points carry psi = 0.
struct DiscreteHamiltonian {
  SymmetricTridiagonal matrix;
  GridSpec grid;
};

inline DiscreteHamiltonian assemble_tridiagonal(const RadialProblem& problem,
                                                const GridSpec& grid) {
  validate_setup(problem, grid);
  const double h = grid.step();
  const double hbar = problem.units.hbar;
  const double kinetic = hbar * hbar / (2.0 * problem.mu * h * h);
  const std::size_t interior = grid.n - 2;

  DiscreteHamiltonian H{{std::vector<double>(interior), std::vector<double>(interior - 1)}, grid};
  for (std::size_t i = 0; i < interior; ++i) {
    H.matrix.diagonal[i] = 2.0 * kinetic + effective_potential(problem, grid.at(i + 1));
  }
  std::fill(H.matrix.off_diagonal.begin(), H.matrix.off_diagonal.end(), -kinetic);
  return H;
}

/// (H psi)_i on interior points i = 1..n-2 (three-point kinetic stencil);
/// end entries are zero.
inline std::vector<double> apply_hamiltonian(const RadialProblem& problem, const GridSpec& grid,
                                             std::span<const double> psi,
                                             std::span<const double> veff) {
  const double h = grid.step();
  const double hbar = problem.units.hbar;
  const double kinetic = hbar * hbar / (2.0 * problem.mu * h * h);
  std::vector<double> out(psi.size(), 0.0);
  for (std::size_t i = 1; i + 1 < psi.size(); ++i) {
    out[i] = -kinetic * (psi[i - 1] - 2.0 * psi[i] + psi[i + 1]) + veff[i] * psi[i];
  }
  return out;
}

/// max_i |(H psi)_i - eps psi_i| / max|psi| over interior points.
inline double hamiltonian_residual(const RadialProblem& problem, const GridSpec& grid,
                                   std::span<const double> psi, double epsilon) {
  const auto veff = effective_potential_samples(problem, grid);
  const auto hpsi = apply_hamiltonian(problem, grid, psi, veff);
  double r = 0.0;
  double peak = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) peak = std::max(peak, std::abs(psi[i]));
  for (std::size_t i = 1; i + 1 < psi.size(); ++i) {
    r = std::max(r, std::abs(hpsi[i] - epsilon * psi[i]));
  }
  return peak > 0.0 ? r / peak : 0.0;
}

/// <psi|H|psi> / <psi|psi> with trapezoidal weights and the three-point
/// kinetic stencil. Invariant under rescaling of psi.
inline double rayleigh_quotient(std::span<const double> psi, const RadialProblem& problem,
                                const GridSpec& grid) {
  validate_setup(problem, grid);
  if (psi.size() != grid.n) throw DomainError("wavefunction length does not match the grid");
  const double h = grid.step();
  const double norm2 = trapezoid_norm2(psi, h);
  if (!(norm2 > 0.0)) throw DomainError("rayleigh quotient of a zero-norm wavefunction");
  const auto veff = effective_potential_samples(problem, grid);
  const auto hpsi = apply_hamiltonian(problem, grid, psi, veff);
  double num = 0.0;
  for (std::size_t i = 1; i + 1 < psi.size(); ++i) num += psi[i] * hpsi[i];
  return num * h / norm2;
}

}  // namespace rsse
