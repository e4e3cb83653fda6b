#pragma once

// One-dimensional relativistic kinematics and a mechanical re-run of
// de Broglie's wave-particle argument: clock vs. wave frequency, phase
// harmony along the trajectory, and k recovered from the group-velocity
// condition alone.

#include <cmath>
#include <optional>

#include "rsse/errors.hpp"
#include "rsse/units.hpp"

namespace rsse::kinematics {

namespace detail {

inline void require_subluminal(double v, const UnitSystem& units) {
  if (!(std::abs(v) < units.c)) {
    throw DomainError("velocity must satisfy |v| < c");
  }
}

inline void require_massive(double m0) {
  if (!(m0 > 0.0)) throw DomainError("rest mass must be positive");
}

}  // namespace detail

/// Lorentz factor. 1 - beta^2 is formed as (1 - beta)(1 + beta) so that
/// velocities close to c keep their relative accuracy.
inline double lorentz_factor(double v, const UnitSystem& units = kAtomicUnits) {
  detail::require_subluminal(v, units);
  const double beta = std::abs(v) / units.c;
  return 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

/// p = gamma m0 v.
inline double momentum(double m0, double v, const UnitSystem& units = kAtomicUnits) {
  detail::require_massive(m0);
  return lorentz_factor(v, units) * m0 * v;
}

/// Positive root of E^2 = m0^2 c^4 + p^2 c^2. Massless particles need p != 0.
inline double total_energy(double m0, double p, const UnitSystem& units = kAtomicUnits) {
  if (m0 < 0.0) throw DomainError("rest mass must be non-negative");
  if (m0 == 0.0 && p == 0.0) {
    throw DomainError("a massless particle needs non-zero momentum");
  }
  return std::hypot(m0 * units.c2(), p * units.c);
}

/// A particle described by rest mass and velocity.
struct MassiveParticle {
  double m0{1.0};
  double v{0.0};

  [[nodiscard]] double gamma(const UnitSystem& units = kAtomicUnits) const {
    return lorentz_factor(v, units);
  }
  [[nodiscard]] double p(const UnitSystem& units = kAtomicUnits) const {
    return momentum(m0, v, units);
  }
  [[nodiscard]] double energy(const UnitSystem& units = kAtomicUnits) const {
    return total_energy(m0, p(units), units);
  }
};

/// Builds a particle from its momentum; v = p c^2 / E.
inline MassiveParticle particle_from_momentum(double m0, double p,
                                              const UnitSystem& units = kAtomicUnits) {
  detail::require_massive(m0);
  return {m0, p * units.c2() / total_energy(m0, p, units)};
}

struct WaveParameters {
  double omega{0.0};
  /// Signed wavenumber; its sign follows the momentum.
  double k{0.0};
  /// h/|p|; empty when p = 0 (infinite wavelength).
  std::optional<double> lambda;
};

/// omega = E / hbar, k = p / hbar, lambda = h / |p|.
inline WaveParameters wave_from_particle(double m0, double v,
                                         const UnitSystem& units = kAtomicUnits) {
  detail::require_massive(m0);
  const double p = momentum(m0, v, units);
  WaveParameters wave;
  wave.omega = total_energy(m0, p, units) / units.hbar;
  wave.k = p / units.hbar;
  if (p != 0.0) wave.lambda = units.planck() / std::abs(p);
  return wave;
}

struct Velocities {
  double group{0.0};
  double phase{0.0};
};

/// v_group = dE/dp = p c^2 / E and v_phase = E / p.
inline Velocities velocities(double m0, double p, const UnitSystem& units = kAtomicUnits) {
  if (p == 0.0) throw DomainError("phase velocity is undefined for p = 0");
  const double energy = total_energy(m0, p, units);
  return {p * units.c2() / energy, energy / p};
}

struct ClockAndWave {
  double omega_clock{0.0};
  double omega_wave{0.0};
};

/// Internal clock frequency seen from the lab (time-dilated) against the
/// frequency of the accompanying wave measured at a fixed point.
inline ClockAndWave clock_and_wave_frequencies(double m0, double v,
                                               const UnitSystem& units = kAtomicUnits) {
  detail::require_massive(m0);
  const double gamma = lorentz_factor(v, units);
  const double omega_rest = m0 * units.c2() / units.hbar;
  return {omega_rest / gamma, omega_rest * gamma};
}

struct PhaseHarmony {
  double phi_clock{0.0};
  double phi_wave{0.0};
  double residual{0.0};
};

/// Compares the clock phase with the wave phase on the trajectory x = v t.
/// The chain gamma -> (k, omega) -> phases runs in extended precision: for
/// fast particles the wave phase is a difference of two terms of order
/// gamma m0 c^2 t / hbar.
inline PhaseHarmony check_phase_harmony(double m0, double v, double t,
                                        const UnitSystem& units = kAtomicUnits) {
  detail::require_massive(m0);
  detail::require_subluminal(v, units);
  using ld = long double;
  const ld c = units.c;
  const ld beta = std::abs(static_cast<ld>(v)) / c;
  const ld gamma = 1.0L / std::sqrt((1.0L - beta) * (1.0L + beta));
  const ld omega_rest = static_cast<ld>(m0) * c * c / units.hbar;
  const ld k = gamma * m0 * static_cast<ld>(v) / units.hbar;
  const ld x = static_cast<ld>(v) * t;
  const ld clock = -(omega_rest / gamma) * t;
  const ld wave_phase = k * x - omega_rest * gamma * t;
  return {static_cast<double>(clock), static_cast<double>(wave_phase),
          static_cast<double>(std::abs(clock - wave_phase))};
}

struct Event {
  double x{0.0};
  double t{0.0};
};

/// Coordinates of an event in a frame moving with velocity v.
inline Event lorentz_boost_event(double x, double t, double v,
                                 const UnitSystem& units = kAtomicUnits) {
  const double gamma = lorentz_factor(v, units);
  return {gamma * (x - v * t), gamma * (t - v * x / units.c2())};
}

struct EnergyMomentum {
  double E{0.0};
  double p{0.0};
};

inline EnergyMomentum lorentz_boost_energy_momentum(double E, double p, double v,
                                                    const UnitSystem& units = kAtomicUnits) {
  const double gamma = lorentz_factor(v, units);
  return {gamma * (E - v * p), gamma * (p - v * E / units.c2())};
}

struct DeBroglieDerivation {
  double k{0.0};
  bool matches_p_over_hbar{false};
  /// |d omega/dk - v| at the returned k.
  double group_velocity_mismatch{0.0};
  int iterations{0};
};

/// Recovers the wavenumber from the two frequency postulates alone: the wave
/// carries omega(k) = E(hbar k) / hbar and its group velocity must equal the
/// particle velocity. Only the positive-frequency branch is considered; the
/// sign of v is restored at the end.
///
/// The root of d omega/dk - |v| is found by bisection on
/// (0, 1e3 gamma m0 c / hbar]; d omega/dk is monotone there, so the bracket
/// always holds exactly one root.
inline DeBroglieDerivation derive_de_broglie(double m0, double v,
                                             const UnitSystem& units = kAtomicUnits,
                                             double rel_tol = 1e-12) {
  detail::require_massive(m0);
  detail::require_subluminal(v, units);
  if (v == 0.0) throw DomainError("derive_de_broglie needs 0 < |v| < c");

  const double speed = std::abs(v);
  const auto group_velocity = [&](double k) {
    const double p = units.hbar * k;
    return p * units.c2() / total_energy(m0, p, units);
  };

  double lo = 0.0;
  double hi = 1e3 * lorentz_factor(v, units) * m0 * units.c / units.hbar;
  DeBroglieDerivation out;
  while (hi - lo > rel_tol * hi && out.iterations < 2000) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (group_velocity(mid) < speed ? lo : hi) = mid;
    ++out.iterations;
  }
  const double k = 0.5 * (lo + hi);
  out.k = std::copysign(k, v);
  out.group_velocity_mismatch = std::abs(group_velocity(k) - speed);
  const double k_expected = momentum(m0, v, units) / units.hbar;
  out.matches_p_over_hbar =
      std::abs(out.k - k_expected) <= 1e-9 * std::abs(k_expected);
  return out;
}

}  // namespace rsse::kinematics
