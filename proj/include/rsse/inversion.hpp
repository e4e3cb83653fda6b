#pragma once

// Particle/antiparticle exchange realized as the space-time inversion
// x -> -x, t -> -t acting on plane waves, without complex conjugation.
// Also: the time-reversal check on stationary states, and the two-component
// (theta, chi) picture of a free matter wave.

#include <cmath>
#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "rsse/errors.hpp"
#include "rsse/grid.hpp"
#include "rsse/kinematics.hpp"
#include "rsse/units.hpp"

namespace rsse::inversion {

enum class Branch { matter, antimatter };

inline constexpr Branch toggled(Branch b) noexcept {
  return b == Branch::matter ? Branch::antimatter : Branch::matter;
}

inline constexpr std::string_view to_string(Branch b) noexcept {
  return b == Branch::matter ? "matter" : "antimatter";
}

/// Free plane wave with positive energy on either branch. Charge number Q and
/// lepton number L follow the electron convention (matter: Q = -1, L = +1).
struct PlaneWaveState {
  double p{0.0};
  double E{0.0};
  double m0{1.0};
  Branch branch{Branch::matter};
  int Q{-1};
  int L{1};
  std::complex<double> amplitude{1.0, 0.0};

  friend bool operator==(const PlaneWaveState&, const PlaneWaveState&) = default;
};

/// On-shell electron (matter) or positron (antimatter) with momentum p.
inline PlaneWaveState make_lepton(double m0, double p, Branch branch,
                                  std::complex<double> amplitude = {1.0, 0.0},
                                  const UnitSystem& units = kAtomicUnits) {
  if (!(m0 > 0.0)) throw DomainError("rest mass must be positive");
  const int sign = branch == Branch::matter ? 1 : -1;
  return {p, kinematics::total_energy(m0, p, units), m0, branch, -sign, sign, amplitude};
}

inline bool is_on_shell(const PlaneWaveState& w, const UnitSystem& units = kAtomicUnits,
                        double rel_tol = 1e-12) {
  if (!(w.E > 0.0)) return false;
  const double expected = kinematics::total_energy(w.m0, w.p, units);
  return std::abs(w.E - expected) <= rel_tol * expected;
}

/// matter: A exp(+i (p x - E t) / hbar); antimatter: A exp(-i (p x - E t) / hbar).
inline std::complex<double> evaluate_plane_wave(const PlaneWaveState& w, double x, double t,
                                                const UnitSystem& units = kAtomicUnits) {
  const double phase = (w.p * x - w.E * t) / units.hbar;
  const double s = w.branch == Branch::matter ? 1.0 : -1.0;
  return w.amplitude * std::polar(1.0, s * phase);
}

/// Space-time inversion of the state description: branch toggled, Q and L
/// negated; momentum, energy, mass and amplitude untouched (no conjugation).
/// evaluate(invert(w), x, t) == evaluate(w, -x, -t).
inline PlaneWaveState spacetime_invert(const PlaneWaveState& w) {
  PlaneWaveState out = w;
  out.branch = toggled(w.branch);
  out.Q = -w.Q;
  out.L = -w.L;
  return out;
}

/// Checks that Psi*(x, -t) solves the same Schrodinger equation as the
/// stationary state Psi(x, t) = psi(x) exp(-i eps t / hbar). Returns
/// max |i hbar dPhi/dt - H Phi| / max|psi| over interior grid points, with
/// Phi(x, t) = Psi*(x, -t), the three-point kinetic stencil and psi = 0 beyond
/// the grid. `potential` holds V (plus any centrifugal term) at grid points.
inline double time_reversal_check(std::span<const std::complex<double>> psi, double epsilon,
                                  std::span<const double> potential, const GridSpec& grid,
                                  double mu, const UnitSystem& units = kAtomicUnits,
                                  double t = 0.0) {
  grid.validate();
  if (psi.size() != grid.n || potential.size() != grid.n) {
    throw DomainError("wavefunction, potential and grid sizes differ");
  }
  if (!(mu > 0.0)) throw DomainError("mass must be positive");
  const double hbar = units.hbar;
  const double h = grid.step();
  const double kinetic = hbar * hbar / (2.0 * mu * h * h);

  // Psi(x, -t) carries exp(+i eps t / hbar); its conjugate exp(-i eps t / hbar).
  const std::complex<double> factor = std::polar(1.0, -epsilon * t / hbar);
  std::vector<std::complex<double>> phi(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) phi[i] = std::conj(psi[i]) * factor;

  double peak = 0.0;
  for (const auto& v : psi) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) throw DomainError("zero wavefunction");

  const std::complex<double> i_unit{0.0, 1.0};
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < phi.size(); ++i) {
    const auto dphi_dt = -i_unit * epsilon / hbar * phi[i];
    const auto lhs = i_unit * hbar * dphi_dt;
    const auto h_phi = -kinetic * (phi[i - 1] - 2.0 * phi[i] + phi[i + 1]) + potential[i] * phi[i];
    worst = std::max(worst, std::abs(lhs - h_phi));
  }
  return worst / peak;
}

/// Two-component amplitudes of a free matter wave; `branch` tells which
/// component dominates (theta for matter, chi for antimatter).
struct ThetaChi {
  std::complex<double> theta{1.0, 0.0};
  std::complex<double> chi{0.0, 0.0};
  double m0{1.0};
  double v{0.0};
  Branch branch{Branch::matter};

  /// |chi| / |theta|.
  [[nodiscard]] double ratio() const { return std::abs(chi) / std::abs(theta); }

  friend bool operator==(const ThetaChi&, const ThetaChi&) = default;
};

/// Large/small component ratio of a free positive-energy wave,
/// pc / (E + m0 c^2) = gamma beta / (gamma + 1). Amplitudes are real, carry the
/// sign of v on the small component and satisfy |theta|^2 + |chi|^2 = 1.
/// The antimatter branch swaps the two magnitudes.
inline ThetaChi dirac_theta_chi(double m0, double v, Branch branch,
                                const UnitSystem& units = kAtomicUnits) {
  if (!(m0 > 0.0)) throw DomainError("rest mass must be positive");
  const double gamma = kinematics::lorentz_factor(v, units);
  const double small = gamma * (v / units.c) / (gamma + 1.0);
  const double norm = std::sqrt(1.0 + small * small);
  const double large_amp = 1.0 / norm;
  const double small_amp = small / norm;
  ThetaChi out;
  out.m0 = m0;
  out.v = v;
  out.branch = branch;
  if (branch == Branch::matter) {
    out.theta = large_amp;
    out.chi = small_amp;
  } else {
    out.theta = small_amp;
    out.chi = large_amp;
  }
  return out;
}

/// theta(-x, -t) = chi(x, t): the inverted state carries the old chi as its
/// theta component and vice versa, on the other branch.
inline ThetaChi invert_theta_chi(const ThetaChi& tc) {
  ThetaChi out = tc;
  out.theta = tc.chi;
  out.chi = tc.theta;
  out.branch = toggled(tc.branch);
  return out;
}

/// m = gamma m0.
inline double effective_mass(double m0, double v, const UnitSystem& units = kAtomicUnits) {
  if (!(m0 > 0.0)) throw DomainError("rest mass must be positive");
  return kinematics::lorentz_factor(v, units) * m0;
}

}  // namespace rsse::inversion
