#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsse/eigensolver.hpp"
#include "rsse/errors.hpp"
#include "rsse/presets.hpp"
#include "rsse/spectra.hpp"

namespace rsse {

/// Where the eigenvalue of each report row comes from.
enum class EpsilonSource { automatic, analytic, fd, numerov };

inline EpsilonSource parse_epsilon_source(std::string_view label) {
  if (label == "auto") return EpsilonSource::automatic;
  if (label == "analytic") return EpsilonSource::analytic;
  if (label == "fd") return EpsilonSource::fd;
  if (label == "numerov") return EpsilonSource::numerov;
  throw DomainError("unknown epsilon source '" + std::string(label) +
                    "' (expected auto, analytic, fd or numerov)");
}

inline std::string_view to_string(EpsilonSource s) noexcept {
  switch (s) {
    case EpsilonSource::automatic: return "auto";
    case EpsilonSource::analytic: return "analytic";
    case EpsilonSource::fd: return "fd";
    case EpsilonSource::numerov: return "numerov";
  }
  return "?";
}

struct BindingRow {
  std::string state;
  int n{0};
  int l{0};
  std::optional<double> j;
  double epsilon{0.0};
  double B_nonrel{0.0};
  double B_rel{0.0};
  /// Dirac-Coulomb binding (external reference); Coulomb systems only.
  std::optional<double> B_dirac;
  std::optional<double> delta_rel_vs_dirac;
};

struct BindingReport {
  std::string system;
  double mu{0.0};
  double M{0.0};
  /// Source actually used for the eigenvalues.
  EpsilonSource epsilon_source{EpsilonSource::analytic};
  std::vector<BindingRow> rows;
};

namespace detail {

inline std::string spectroscopic_label(int n, int l, double j) {
  static constexpr std::string_view letters = "spdfghiklmnoqrtuv";
  std::string label = std::to_string(n);
  label += l < static_cast<int>(letters.size()) ? letters[static_cast<std::size_t>(l)] : '?';
  label += std::to_string(static_cast<int>(2.0 * j)) + "/2";
  return label;
}

inline double state_epsilon(const SystemPreset& preset, int l, int nodes, EpsilonSource source) {
  RadialProblem problem = preset.problem;
  problem.l = l;
  if (source == EpsilonSource::analytic) {
    const auto exact = exact_level(problem, nodes);
    if (!exact) throw DomainError("no closed-form eigenvalue for preset '" + preset.name + "'");
    return *exact;
  }
  const auto method = source == EpsilonSource::fd ? SolverMethod::fd : SolverMethod::numerov;
  const auto& grid = preset.grid_for(method);
  if (method == SolverMethod::fd) {
    return solve_lowest_k(assemble_tridiagonal(problem, grid), static_cast<std::size_t>(nodes) + 1)
        .epsilons.back();
  }
  return numerov_solve(problem, grid, nodes, numerov_bracket(problem, grid, nodes)).epsilon;
}

}  // namespace detail

/// Per-state comparison of the nonrelativistic binding -eps, the relativistic
/// mapping of eps, and (for Coulomb systems) the exact Dirac-Coulomb binding
/// of a particle of mass mu.
///
/// Coulomb presets list every (n, l, j) with n <= n_max; other presets list
/// the n_max lowest l = 0 states. `automatic` takes eigenvalues from the
/// closed form for Coulomb systems and from the Numerov solver otherwise.
inline BindingReport compare_report(const std::string& preset_name, int n_max,
                                    EpsilonSource source = EpsilonSource::automatic) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  const auto preset = load_preset(preset_name);
  const auto& problem = preset.problem;
  const auto& units = problem.units;
  const bool coulomb = is_coulomb(problem.potential);
  if (source == EpsilonSource::automatic) {
    source = coulomb ? EpsilonSource::analytic : EpsilonSource::numerov;
  }

  BindingReport report;
  report.system = preset.name;
  report.mu = problem.mu;
  report.M = problem.M;
  report.epsilon_source = source;

  const auto fill = [&](BindingRow& row) {
    row.B_nonrel = spectra::binding_nonrel(row.epsilon);
    row.B_rel = spectra::binding_relativistic(row.epsilon, problem.M, units);
  };

  if (coulomb) {
    const double Z = std::get<Coulomb>(problem.potential).Z;
    for (int n = 1; n <= n_max; ++n) {
      for (int l = 0; l < n; ++l) {
        const double eps = detail::state_epsilon(preset, l, n - l - 1, source);
        for (const double j : {l - 0.5, l + 0.5}) {
          if (j < 0.5) continue;
          BindingRow row;
          row.state = detail::spectroscopic_label(n, l, j);
          row.n = n;
          row.l = l;
          row.j = j;
          row.epsilon = eps;
          fill(row);
          row.B_dirac = spectra::dirac_coulomb_level(Z, n, j, problem.mu, units).B;
          row.delta_rel_vs_dirac = row.B_rel - *row.B_dirac;
          report.rows.push_back(std::move(row));
        }
      }
    }
  } else {
    for (int n = 0; n < n_max; ++n) {
      BindingRow row;
      row.state = "n=" + std::to_string(n);
      row.n = n;
      row.epsilon = detail::state_epsilon(preset, 0, n, source);
      fill(row);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace rsse
