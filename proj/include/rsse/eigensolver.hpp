#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rsse/errors.hpp"
#include "rsse/grid.hpp"
#include "rsse/hamiltonian.hpp"
#include "rsse/tridiagonal.hpp"

namespace rsse {

enum class SolverMethod { fd, numerov };

inline std::string_view to_string(SolverMethod m) noexcept {
  return m == SolverMethod::fd ? "fd" : "numerov";
}

inline SolverMethod parse_solver_method(std::string_view label) {
  if (label == "fd") return SolverMethod::fd;
  if (label == "numerov") return SolverMethod::numerov;
  throw DomainError("unknown solver method '" + std::string(label) + "' (expected fd or numerov)");
}

/// Bound states on the full grid, sorted by energy. Wavefunctions are
/// trapezoidally normalized and oriented so their first sizable lobe is
/// positive.
struct EigenResult {
  std::vector<double> epsilons;
  std::vector<std::vector<double>> wavefunctions;
  std::vector<double> residuals;
  std::vector<int> nodes;
  std::vector<bool> degenerate;
  std::string method;
  GridSpec grid;

  [[nodiscard]] std::size_t size() const noexcept { return epsilons.size(); }
};

namespace detail {

inline void normalize_trapezoid(std::vector<double>& psi, double h) {
  const double norm = std::sqrt(trapezoid_norm2(psi, h));
  double peak = 0.0;
  for (double v : psi) peak = std::max(peak, std::abs(v));
  for (double v : psi) {
    if (std::abs(v) > 1e-3 * peak) {
      const double sign = v > 0.0 ? 1.0 : -1.0;
      for (double& x : psi) x *= sign / norm;
      return;
    }
  }
}

}  // namespace detail

/// Lowest k eigenpairs of a finite-difference Hamiltonian.
inline EigenResult solve_lowest_k(const DiscreteHamiltonian& op, std::size_t k) {
  if (k < 1 || k > op.matrix.size()) {
    throw DomainError("k must lie in [1, " + std::to_string(op.matrix.size()) + "]");
  }
  auto pairs = lowest_eigenpairs(op.matrix, k);
  EigenResult out;
  out.method = "fd";
  out.grid = op.grid;
  const double h = op.grid.step();
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> psi(op.grid.n, 0.0);
    std::copy(pairs.vectors[j].begin(), pairs.vectors[j].end(), psi.begin() + 1);
    detail::normalize_trapezoid(psi, h);
    out.nodes.push_back(count_nodes(psi));
    out.wavefunctions.push_back(std::move(psi));
  }
  out.epsilons = std::move(pairs.values);
  out.residuals = std::move(pairs.residuals);
  out.degenerate = std::move(pairs.degenerate);
  return out;
}

// ---------------------------------------------------------------------------
// Numerov shooting

struct NumerovOptions {
  /// Relative energy tolerance of the bisection stage.
  double rel_tol{1e-10};
  int max_iterations{500};
};

struct NumerovState {
  double epsilon{0.0};
  std::vector<double> wavefunction;
  int nodes{0};
  double residual{0.0};
  int iterations{0};
};

namespace detail {

/// Integrates u'' = -q(r) u with q = 2 mu (E - V_eff) / hbar^2 on a uniform
/// grid. Radial problems start from the regular solution
/// u ~ r^(l+1) (1 - mu kappa r / (hbar^2 (l+1))), kappa the Coulomb strength;
/// other problems start from psi = 0 at r_min. The far end is always psi = 0.
class NumerovShooter {
 public:
  NumerovShooter(const RadialProblem& problem, const GridSpec& grid)
      : grid_(grid),
        h_(grid.step()),
        veff_(effective_potential_samples(problem, grid)),
        scale_(2.0 * problem.mu / (problem.units.hbar * problem.units.hbar)),
        f_(grid.n) {
    start_.assign(2, 0.0);
    if (problem.is_radial()) {
      double slope = 0.0;
      if (const auto* c = std::get_if<Coulomb>(&problem.potential)) {
        const double kappa = c->Z * problem.units.coulomb_coupling();
        slope = -scale_ * 0.5 * kappa / (problem.l + 1);
      }
      for (std::size_t i = 0; i < 2; ++i) {
        const double r = grid.at(i);
        start_[i] = std::pow(r, problem.l + 1) * (1.0 + slope * r);
      }
    } else {
      start_[1] = h_;
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return grid_.n; }
  [[nodiscard]] double min_potential() const {
    return *std::min_element(veff_.begin(), veff_.end());
  }
  [[nodiscard]] double potential_at(std::size_t i) const { return veff_[i]; }

  void set_energy(double e) {
    energy_ = e;
    const double c = h_ * h_ / 12.0;
    for (std::size_t i = 0; i < f_.size(); ++i) f_[i] = 1.0 + c * scale_ * (e - veff_[i]);
  }

  /// Largest index where the classical region ends, clamped to [2, n-3].
  [[nodiscard]] std::size_t matching_index() const {
    const std::size_t n = f_.size();
    std::size_t m = n - 3;
    bool found = false;
    for (std::size_t i = n - 1; i-- > 0;) {
      if (energy_ >= veff_[i]) {
        m = i;
        found = true;
        break;
      }
    }
    if (!found) m = n / 2;
    return std::clamp<std::size_t>(m, 2, n - 3);
  }

  /// psi[0..last] from the inner boundary. Large values are rescaled; only
  /// shape and sign matter.
  void integrate_outward(std::size_t last, std::vector<double>& psi) const {
    psi.assign(last + 1, 0.0);
    psi[0] = start_[0];
    psi[1] = start_[1];
    for (std::size_t i = 1; i < last; ++i) {
      psi[i + 1] = ((12.0 - 10.0 * f_[i]) * psi[i] - f_[i - 1] * psi[i - 1]) / f_[i + 1];
      if (std::abs(psi[i + 1]) > kRescaleAbove) {
        for (std::size_t j = 0; j <= i + 1; ++j) psi[j] *= kRescaleBy;
      }
    }
  }

  /// psi[first..n-1] from the outer boundary, stored at the same indices.
  void integrate_inward(std::size_t first, std::vector<double>& psi) const {
    const std::size_t n = f_.size();
    psi.assign(n, 0.0);
    psi[n - 1] = 0.0;
    psi[n - 2] = h_;
    for (std::size_t i = n - 2; i > first; --i) {
      psi[i - 1] = ((12.0 - 10.0 * f_[i]) * psi[i] - f_[i + 1] * psi[i + 1]) / f_[i - 1];
      if (std::abs(psi[i - 1]) > kRescaleAbove) {
        for (std::size_t j = i - 1; j < n; ++j) psi[j] *= kRescaleBy;
      }
    }
  }

  /// Number of Dirichlet eigenvalues of the discrete problem below the
  /// current energy: sign changes of the outward solution over the grid.
  [[nodiscard]] int count_states_below() const {
    std::vector<double> psi;
    integrate_outward(f_.size() - 1, psi);
    return count_sign_changes(std::span<const double>(psi).subspan(1));
  }

  struct Match {
    int nodes{0};
    /// Log-derivative mismatch (inward minus outward) in Numerov form.
    double mismatch{0.0};
    std::size_t m{0};
  };

  [[nodiscard]] Match match(std::size_t m) const {
    std::vector<double> out;
    std::vector<double> in;
    integrate_outward(m, out);
    Match result;
    result.m = m;
    result.nodes = count_sign_changes(std::span<const double>(out).subspan(1, m));
    integrate_inward(m, in);
    const double pm = out[m];
    if (pm == 0.0 || in[m] == 0.0) {
      result.mismatch = std::numeric_limits<double>::infinity();
      return result;
    }
    const double s = pm / in[m];
    const double jump =
        f_[m - 1] * out[m - 1] + f_[m + 1] * in[m + 1] * s - (12.0 - 10.0 * f_[m]) * pm;
    result.mismatch = jump / (h_ * pm);
    return result;
  }

  [[nodiscard]] std::vector<double> assemble(std::size_t m) const {
    std::vector<double> out;
    std::vector<double> in;
    integrate_outward(m, out);
    integrate_inward(m, in);
    const double s = in[m] != 0.0 ? out[m] / in[m] : 0.0;
    std::vector<double> psi(f_.size());
    for (std::size_t i = 0; i <= m; ++i) psi[i] = out[i];
    for (std::size_t i = m + 1; i < psi.size(); ++i) psi[i] = in[i] * s;
    return psi;
  }

  static int count_sign_changes(std::span<const double> psi) {
    int changes = 0;
    int last = 0;
    for (double v : psi) {
      if (v == 0.0) continue;
      const int sign = v > 0.0 ? 1 : -1;
      if (last != 0 && sign != last) ++changes;
      last = sign;
    }
    return changes;
  }

 private:
  static constexpr double kRescaleAbove = 1e150;
  static constexpr double kRescaleBy = 1e-150;

  GridSpec grid_;
  double h_;
  std::vector<double> veff_;
  double scale_;
  std::vector<double> f_;
  std::vector<double> start_;
  double energy_{0.0};
};

}  // namespace detail

/// Number of bound states of the discrete Numerov problem below `energy`.
inline int numerov_count_below(const RadialProblem& problem, const GridSpec& grid,
                               double energy) {
  validate_setup(problem, grid);
  detail::NumerovShooter shooter(problem, grid);
  shooter.set_energy(energy);
  return shooter.count_states_below();
}

/// Finds an energy interval holding exactly the n_index-th state.
inline std::pair<double, double> numerov_bracket(const RadialProblem& problem,
                                                 const GridSpec& grid, int n_index) {
  validate_setup(problem, grid);
  if (n_index < 0) throw DomainError("state index must be non-negative");
  detail::NumerovShooter shooter(problem, grid);
  const auto count = [&](double e) {
    shooter.set_energy(e);
    return shooter.count_states_below();
  };

  double lo = shooter.min_potential();
  if (count(lo) > n_index) throw ConvergenceError("no energy below the requested state");
  double hi = std::max(shooter.potential_at(grid.n - 1), lo + 1.0);
  for (int it = 0; count(hi) <= n_index; ++it) {
    if (it > 200) throw ConvergenceError("could not bracket the requested state");
    hi = lo + 2.0 * (hi - lo);
  }
  // Shrink until the bracket holds exactly one state.
  for (int it = 0; it < 400; ++it) {
    const int c_lo = count(lo);
    const int c_hi = count(hi);
    if (c_lo == n_index && c_hi == n_index + 1) return {lo, hi};
    const double mid = 0.5 * (lo + hi);
    (count(mid) > n_index ? hi : lo) = mid;
  }
  throw ConvergenceError("could not isolate the requested state");
}

/// State with `n_index` interior nodes, by outward/inward Numerov integration
/// matched at the outer classical turning point. Bisection (guarded by node
/// counts) narrows the energy to `rel_tol`; an Illinois false-position pass on
/// the matching mismatch then polishes it.
inline NumerovState numerov_solve(const RadialProblem& problem, const GridSpec& grid,
                                  int n_index, std::pair<double, double> bracket,
                                  const NumerovOptions& options = {}) {
  validate_setup(problem, grid);
  if (n_index < 0) throw DomainError("state index must be non-negative");
  auto [lo, hi] = bracket;
  if (!(lo < hi)) std::swap(lo, hi);

  detail::NumerovShooter shooter(problem, grid);
  const auto count = [&](double e) {
    shooter.set_energy(e);
    return shooter.count_states_below();
  };
  const int c_lo = count(lo);
  const int c_hi = count(hi);
  if (c_lo == c_hi) {
    throw BracketError("energy bracket encloses no eigenvalue (no change in state count)");
  }
  if (c_lo > n_index || c_hi <= n_index) {
    throw WrongStateError("energy bracket encloses states " + std::to_string(c_lo) + ".." +
                          std::to_string(c_hi - 1) + ", not state " + std::to_string(n_index));
  }
  // Isolate the target state by state counting.
  for (int it = 0; it < 200 && (count(lo) != n_index || count(hi) != n_index + 1); ++it) {
    const double mid = 0.5 * (lo + hi);
    (count(mid) > n_index ? hi : lo) = mid;
  }

  NumerovState state;
  const auto too_high = [&](double e, std::size_t* m_out) {
    shooter.set_energy(e);
    const auto m = m_out != nullptr && *m_out != 0 ? *m_out : shooter.matching_index();
    const auto match = shooter.match(m);
    if (m_out != nullptr) *m_out = m;
    if (match.nodes != n_index) return match.nodes > n_index;
    return match.mismatch > 0.0;
  };

  while (state.iterations < options.max_iterations) {
    const double scale = std::max(std::abs(lo), std::abs(hi));
    if (hi - lo <= options.rel_tol * scale) break;
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    ++state.iterations;
    (too_high(mid, nullptr) ? hi : lo) = mid;
  }
  if (hi - lo > options.rel_tol * std::max(std::abs(lo), std::abs(hi))) {
    throw ConvergenceError("numerov bisection did not reach tolerance");
  }

  // Polish on the mismatch with a frozen matching point.
  shooter.set_energy(0.5 * (lo + hi));
  const std::size_t m = shooter.matching_index();
  const auto mismatch = [&](double e) {
    shooter.set_energy(e);
    return shooter.match(m);
  };
  double energy = 0.5 * (lo + hi);
  auto m_lo = mismatch(lo);
  auto m_hi = mismatch(hi);
  if (m_lo.nodes == n_index && m_hi.nodes == n_index && std::isfinite(m_lo.mismatch) &&
      std::isfinite(m_hi.mismatch) && m_lo.mismatch * m_hi.mismatch < 0.0) {
    double f_lo = m_lo.mismatch;
    double f_hi = m_hi.mismatch;
    int side = 0;
    for (int it = 0; it < 100; ++it) {
      const double e = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
      if (!(e > lo && e < hi)) break;
      energy = e;
      const double f = mismatch(e).mismatch;
      ++state.iterations;
      if (f == 0.0 || !std::isfinite(f)) break;
      if ((f > 0.0) == (f_hi > 0.0)) {
        hi = e;
        f_hi = f;
        if (side == -1) f_lo *= 0.5;
        side = -1;
      } else {
        lo = e;
        f_lo = f;
        if (side == 1) f_hi *= 0.5;
        side = 1;
      }
      if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(e)) break;
    }
  }

  shooter.set_energy(energy);
  state.epsilon = energy;
  state.wavefunction = shooter.assemble(m);
  detail::normalize_trapezoid(state.wavefunction, grid.step());
  state.nodes = count_nodes(state.wavefunction);
  if (state.nodes != n_index) {
    throw WrongStateError("converged state has " + std::to_string(state.nodes) +
                          " nodes, expected " + std::to_string(n_index));
  }
  state.residual = hamiltonian_residual(problem, grid, state.wavefunction, energy);
  return state;
}

/// The k lowest states of `problem` by Numerov shooting.
inline EigenResult solve_numerov_lowest(const RadialProblem& problem, const GridSpec& grid,
                                        std::size_t k, const NumerovOptions& options = {}) {
  if (k < 1) throw DomainError("k must be at least 1");
  EigenResult out;
  out.method = "numerov";
  out.grid = grid;
  for (std::size_t j = 0; j < k; ++j) {
    const int index = static_cast<int>(j);
    auto state = numerov_solve(problem, grid, index, numerov_bracket(problem, grid, index), options);
    const bool degenerate =
        j > 0 && std::abs(state.epsilon - out.epsilons.back()) <
                     1e-12 * std::max(1.0, std::abs(state.epsilon));
    out.epsilons.push_back(state.epsilon);
    out.residuals.push_back(state.residual);
    out.nodes.push_back(state.nodes);
    out.degenerate.push_back(degenerate);
    out.wavefunctions.push_back(std::move(state.wavefunction));
  }
  return out;
}

/// Dispatches to the finite-difference or Numerov path.
inline EigenResult solve_states(const RadialProblem& problem, const GridSpec& grid,
                                std::size_t k, SolverMethod method) {
  if (method == SolverMethod::fd) return solve_lowest_k(assemble_tridiagonal(problem, grid), k);
  return solve_numerov_lowest(problem, grid, k);
}

// ---------------------------------------------------------------------------
// Convergence order

struct ConvergenceStudy {
  std::vector<double> steps;
  std::vector<double> epsilons;
  std::vector<double> errors;
  double slope{0.0};
};

/// Least-squares slope of log|eps_h - exact| against log h for state
/// `state_index` over `grids`.
inline ConvergenceStudy convergence_study(const RadialProblem& problem,
                                          std::span<const GridSpec> grids, SolverMethod method,
                                          int state_index, double exact) {
  if (grids.size() < 3) throw DomainError("convergence fit needs at least 3 grids");
  const auto [min_grid, max_grid] = std::minmax_element(
      grids.begin(), grids.end(),
      [](const GridSpec& a, const GridSpec& b) { return a.step() < b.step(); });
  if (!(max_grid->step() > min_grid->step() * (1.0 + 1e-9))) {
    throw DomainError("degenerate convergence fit: grid steps do not vary");
  }
  ConvergenceStudy study;
  NumerovOptions tight;
  tight.rel_tol = 1e-13;
  for (const auto& grid : grids) {
    double eps = 0.0;
    if (method == SolverMethod::fd) {
      eps = solve_lowest_k(assemble_tridiagonal(problem, grid),
                           static_cast<std::size_t>(state_index) + 1)
                .epsilons.back();
    } else {
      eps = numerov_solve(problem, grid, state_index,
                          numerov_bracket(problem, grid, state_index), tight)
                .epsilon;
    }
    study.steps.push_back(grid.step());
    study.epsilons.push_back(eps);
    study.errors.push_back(std::abs(eps - exact));
  }

  const std::size_t n = grids.size();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(study.errors[i] > 0.0)) throw ConvergenceError("zero error; cannot fit a slope");
    mx += std::log(study.steps[i]);
    my += std::log(study.errors[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(study.steps[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(study.errors[i]) - my);
  }
  if (!(sxx > 1e-12)) throw DomainError("degenerate convergence fit: grid steps do not vary");
  study.slope = sxy / sxx;
  return study;
}

inline double convergence_order(const RadialProblem& problem, std::span<const GridSpec> grids,
                                SolverMethod method, int state_index, double exact) {
  return convergence_study(problem, grids, method, state_index, exact).slope;
}

}  // namespace rsse
