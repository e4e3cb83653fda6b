#pragma once

// Closed-form spectra used as oracles, and the mappings between the
// Schrodinger eigenvalue eps, the total energy E of a bound system and its
// binding energy B, for a system of total rest mass M.

#include <cmath>
#include <numbers>
#include <string>

#include "rsse/errors.hpp"
#include "rsse/units.hpp"

namespace rsse::spectra {

/// Nonrelativistic hydrogen-like level -mu (Z alpha c)^2 / (2 n^2); in atomic
/// units -mu Z^2 / (2 n^2).
inline double bohr_level(double Z, double mu, int n, const UnitSystem& units = kAtomicUnits) {
  if (n < 1) throw DomainError("principal quantum number must be >= 1");
  if (!(Z > 0.0) || !(mu > 0.0)) throw DomainError("Z and mu must be positive");
  const double kappa = Z * units.coulomb_coupling();
  return -mu * kappa * kappa / (2.0 * units.hbar * units.hbar * n * n);
}

/// hbar omega (n + 1/2).
inline double oscillator_level(double omega, int n, const UnitSystem& units = kAtomicUnits) {
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  if (n < 0) throw DomainError("oscillator quantum number must be >= 0");
  return units.hbar * omega * (n + 0.5);
}

/// Box [0, a] with hard walls; n counts from 0.
inline double infinite_well_level(double a, double mu, int n,
                                  const UnitSystem& units = kAtomicUnits) {
  if (!(a > 0.0) || !(mu > 0.0)) throw DomainError("a and mu must be positive");
  if (n < 0) throw DomainError("well quantum number must be >= 0");
  const double k = std::numbers::pi * (n + 1) / a;
  return units.hbar * units.hbar * k * k / (2.0 * mu);
}

struct DiracLevel {
  double E_total{0.0};
  double B{0.0};
};

/// Exact Dirac-Coulomb level of a point nucleus (external reference):
/// E = m c^2 [1 + (Z alpha / (n - k + sqrt(k^2 - Z^2 alpha^2)))^2]^(-1/2),
/// k = j + 1/2. B = m c^2 - E is evaluated without cancellation.
inline DiracLevel dirac_coulomb_level(double Z, int n, double j, double mass = 1.0,
                                      const UnitSystem& units = kAtomicUnits) {
  if (n < 1) throw DomainError("principal quantum number must be >= 1");
  if (!(Z > 0.0) || !(mass > 0.0)) throw DomainError("Z and mass must be positive");
  const double k = j + 0.5;
  if (!(k >= 1.0) || std::abs(k - std::round(k)) > 1e-12) {
    throw DomainError("j must be a positive half-integer");
  }
  if (k > n + 1e-12) throw DomainError("j + 1/2 must not exceed n");
  const double za = Z * kFineStructure;
  if (za >= k) {
    throw DomainError("supercritical coupling: Z alpha >= j + 1/2 (" + std::to_string(za) + ")");
  }
  const double delta = n - std::round(k) + std::sqrt(k * k - za * za);
  const double y = (za / delta) * (za / delta);
  const double root = std::sqrt(1.0 + y);
  const double rest = mass * units.c2();
  return {rest / root, rest * y / ((1.0 + root) * root)};
}

/// B = -eps.
inline constexpr double binding_nonrel(double epsilon) noexcept { return -epsilon; }

namespace detail {

inline double rest_energy(double M, const UnitSystem& units) {
  if (!(M > 0.0)) throw DomainError("total mass M must be positive");
  return M * units.c2();
}

inline void require_epsilon_domain(double epsilon, double rest) {
  if (epsilon < -0.5 * rest) {
    throw DomainError("epsilon below the physical domain: require eps >= -M c^2 / 2 = " +
                      std::to_string(-0.5 * rest));
  }
}

}  // namespace detail

/// eps = (E^2 - M^2 c^4) / (2 M c^2).
inline double epsilon_from_total_energy(double E, double M,
                                        const UnitSystem& units = kAtomicUnits) {
  if (!(E > 0.0)) throw DomainError("total energy must be positive");
  const double rest = detail::rest_energy(M, units);
  return (E - rest) * (E + rest) / (2.0 * rest);
}

/// Positive root E = M c^2 sqrt(1 + 2 eps / (M c^2)).
inline double total_energy_from_epsilon(double epsilon, double M,
                                        const UnitSystem& units = kAtomicUnits) {
  const double rest = detail::rest_energy(M, units);
  detail::require_epsilon_domain(epsilon, rest);
  return rest * std::sqrt(1.0 + 2.0 * epsilon / rest);
}

/// B = M c^2 [1 - sqrt(1 + 2 eps / (M c^2))], written as
/// -2 eps / (1 + sqrt(1 + 2 eps / (M c^2))) to avoid cancellation.
inline double binding_relativistic(double epsilon, double M,
                                   const UnitSystem& units = kAtomicUnits) {
  const double rest = detail::rest_energy(M, units);
  detail::require_epsilon_domain(epsilon, rest);
  return -2.0 * epsilon / (1.0 + std::sqrt(1.0 + 2.0 * epsilon / rest));
}

}  // namespace rsse::spectra
