#pragma once

// Command-line front end. Every command resolves its configuration in the
// order flags > config file (--config, flat key=value) > defaults, echoes the
// resolved values into the output header and exits with
//   0  success, report written
//   2  usage or domain error
//   3  numerical non-convergence

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsse/binding_report.hpp"
#include "rsse/eigensolver.hpp"
#include "rsse/errors.hpp"
#include "rsse/inversion.hpp"
#include "rsse/kinematics.hpp"
#include "rsse/output.hpp"
#include "rsse/presets.hpp"

namespace rsse::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 2, kNonConvergence = 3 };

/// Raw options; empty until set by a flag or the config file.
struct RunOptions {
  std::optional<std::string> config;
  std::optional<std::string> preset;
  std::optional<int> n_max;
  std::optional<std::string> method;
  std::optional<int> l;
  std::optional<double> r_min;
  std::optional<double> r_max;
  std::optional<std::size_t> n_points;
  std::optional<std::string> format;
  std::optional<std::string> output;
  std::optional<std::vector<double>> beta;
  std::optional<double> mass;
  std::optional<double> t;
  std::optional<std::string> epsilon_source;
  std::optional<std::string> plot_prefix;
  std::optional<int> state;
  std::optional<int> levels;
  std::optional<int> points;
  std::optional<std::uint64_t> seed;
};

namespace detail {

template <class T>
T parse_value(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T value{};
  if (!(in >> value) || !(in >> std::ws).eof()) {
    throw DomainError("config key '" + key + "' has invalid value '" + text + "'");
  }
  return value;
}

template <>
inline std::string parse_value<std::string>(const std::string&, const std::string& text) {
  return text;
}

template <>
inline std::vector<double> parse_value<std::vector<double>>(const std::string& key,
                                                            const std::string& text) {
  std::vector<double> values;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    values.push_back(parse_value<double>(key, rsse::detail::trim(item)));
  }
  if (values.empty()) throw DomainError("config key '" + key + "' is empty");
  return values;
}

template <class T>
void fill_from(std::optional<T>& slot, const std::map<std::string, std::string>& kv,
               const std::string& key) {
  if (slot) return;
  if (const auto it = kv.find(key); it != kv.end()) slot = parse_value<T>(key, it->second);
}

inline void merge_config_file(RunOptions& o) {
  if (!o.config) return;
  std::ifstream in(*o.config);
  if (!in) throw DomainError("cannot open config file " + *o.config);
  const auto kv = parse_key_values(in, *o.config);
  static const std::vector<std::string> known{
      "preset", "n-max", "method", "l", "r-min", "r-max", "n-points", "format", "output",
      "beta", "mass", "t", "state", "levels", "points", "epsilon-source", "plot-prefix", "seed"};
  for (const auto& [key, value] : kv) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw DomainError("unknown config key '" + key + "' in " + *o.config);
    }
  }
  fill_from(o.preset, kv, "preset");
  fill_from(o.n_max, kv, "n-max");
  fill_from(o.method, kv, "method");
  fill_from(o.l, kv, "l");
  fill_from(o.r_min, kv, "r-min");
  fill_from(o.r_max, kv, "r-max");
  fill_from(o.n_points, kv, "n-points");
  fill_from(o.format, kv, "format");
  fill_from(o.output, kv, "output");
  fill_from(o.beta, kv, "beta");
  fill_from(o.mass, kv, "mass");
  fill_from(o.t, kv, "t");
  fill_from(o.epsilon_source, kv, "epsilon-source");
  fill_from(o.plot_prefix, kv, "plot-prefix");
  fill_from(o.state, kv, "state");
  fill_from(o.levels, kv, "levels");
  fill_from(o.points, kv, "points");
  fill_from(o.seed, kv, "seed");
}

inline std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (double x : v) out += (out.empty() ? "" : ",") + output::format_double(x);
  return out;
}

/// Resolved settings shared by all commands.
struct Resolved {
  std::string command;
  std::string format;
  std::string output;
  output::KeyValues echo;
};

inline Resolved resolve_common(const std::string& command, const RunOptions& o) {
  Resolved r;
  r.command = command;
  r.format = o.format.value_or("csv");
  if (r.format != "csv" && r.format != "json") {
    throw DomainError("unknown format '" + r.format + "' (expected csv or json)");
  }
  r.output = o.output.value_or("");
  r.echo.emplace_back("command", command);
  r.echo.emplace_back("format", r.format);
  if (o.config) r.echo.emplace_back("config", *o.config);
  return r;
}

inline GridSpec resolve_grid(const GridSpec& base, const RunOptions& o) {
  return {o.r_min.value_or(base.r_min), o.r_max.value_or(base.r_max),
          o.n_points.value_or(base.n)};
}

inline void echo_grid(output::KeyValues& echo, const GridSpec& g) {
  echo.emplace_back("r-min", output::format_double(g.r_min));
  echo.emplace_back("r-max", output::format_double(g.r_max));
  echo.emplace_back("n-points", std::to_string(g.n));
}

inline void echo_problem(output::KeyValues& echo, const SystemPreset& preset) {
  echo.emplace_back("preset", preset.name);
  echo.emplace_back("potential", std::string(potential_name(preset.problem.potential)));
  echo.emplace_back("mu", output::format_double(preset.problem.mu));
  echo.emplace_back("M", output::format_double(preset.problem.M));
}

inline void emit(const Resolved& r, const output::Table& table, const UnitSystem& units,
                 std::ostream& out) {
  std::ostringstream buffer;
  if (r.format == "json") {
    output::write_json(buffer, r.echo, output::describe_units(units), table);
  } else {
    output::write_csv(buffer, r.echo, output::describe_units(units), table);
  }
  if (r.output.empty()) {
    out << buffer.str();
    return;
  }
  std::ofstream file(r.output, std::ios::binary | std::ios::trunc);
  file << buffer.str();
  file.close();
  if (!file) throw DomainError("cannot write output file " + r.output);
}

inline void write_plot(const std::string& path, const Resolved& r, const UnitSystem& units,
                       const output::KeyValues& notes, const std::vector<double>& x,
                       const std::vector<double>& y) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  output::write_plot_data(file, r.echo, output::describe_units(units), notes, x, y);
  file.close();
  if (!file) throw DomainError("cannot write plot file " + path);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

inline void run_solve(const RunOptions& o, std::ostream& out) {
  auto r = detail::resolve_common("solve", o);
  const auto preset = load_preset(o.preset.value_or("hydrogen"));
  const auto method = o.method ? parse_solver_method(*o.method) : preset.default_method;
  const auto grid = detail::resolve_grid(preset.grid_for(method), o);
  const int n_max = o.n_max.value_or(1);
  if (n_max < 1) throw DomainError("--n-max must be at least 1");
  RadialProblem problem = preset.problem;
  problem.l = o.l.value_or(0);

  detail::echo_problem(r.echo, preset);
  r.echo.emplace_back("method", std::string(to_string(method)));
  r.echo.emplace_back("n-max", std::to_string(n_max));
  r.echo.emplace_back("l", std::to_string(problem.l));
  detail::echo_grid(r.echo, grid);
  if (o.plot_prefix) r.echo.emplace_back("plot-prefix", *o.plot_prefix);

  const auto result = solve_states(problem, grid, static_cast<std::size_t>(n_max), method);

  output::Table table;
  table.columns = {"n", "l", "epsilon_hartree", "residual", "nodes"};
  std::string degenerate;
  const bool coulomb = is_coulomb(problem.potential);
  for (std::size_t j = 0; j < result.size(); ++j) {
    const int nodes = result.nodes[j];
    const std::int64_t n = coulomb ? nodes + problem.l + 1 : static_cast<std::int64_t>(j);
    table.rows.push_back({n, std::int64_t{problem.l}, result.epsilons[j], result.residuals[j],
                          std::int64_t{nodes}});
    if (result.degenerate[j]) degenerate += (degenerate.empty() ? "" : ",") + std::to_string(n);
  }
  table.notes.emplace_back("n", coulomb ? "principal quantum number" : "state index");
  table.notes.emplace_back("residual", "max|H psi - eps psi| / max|psi|, three-point stencil");
  table.notes.emplace_back("degenerate", degenerate.empty() ? "none" : degenerate);
  detail::emit(r, table, problem.units, out);

  if (o.plot_prefix) {
    const auto x = grid.points();
    for (std::size_t j = 0; j < result.size(); ++j) {
      detail::write_plot(*o.plot_prefix + "_" + std::to_string(j) + ".dat", r, problem.units,
                         {{"columns", "r psi"}, {"state", std::to_string(j)}}, x,
                         result.wavefunctions[j]);
    }
  }
}

inline void run_compare(const RunOptions& o, std::ostream& out) {
  auto r = detail::resolve_common("compare", o);
  const std::string name = o.preset.value_or("hydrogen");
  const int n_max = o.n_max.value_or(1);
  const auto source = parse_epsilon_source(o.epsilon_source.value_or("auto"));
  const auto report = compare_report(name, n_max, source);
  const auto preset = load_preset(name);

  detail::echo_problem(r.echo, preset);
  r.echo.emplace_back("n-max", std::to_string(n_max));
  r.echo.emplace_back("epsilon-source", std::string(to_string(report.epsilon_source)));
  if (report.epsilon_source == EpsilonSource::fd || report.epsilon_source == EpsilonSource::numerov) {
    detail::echo_grid(r.echo, preset.grid_for(report.epsilon_source == EpsilonSource::fd
                                                  ? SolverMethod::fd
                                                  : SolverMethod::numerov));
  }

  output::Table table;
  table.columns = {"state", "n", "l", "j", "epsilon", "B_nonrel", "B_rel", "B_dirac",
                   "delta_rel_vs_dirac"};
  const auto opt = [](const std::optional<double>& v) -> output::Cell {
    if (v) return *v;
    return std::monostate{};
  };
  for (const auto& row : report.rows) {
    table.rows.push_back({row.state, std::int64_t{row.n}, std::int64_t{row.l}, opt(row.j),
                          row.epsilon, row.B_nonrel, row.B_rel, opt(row.B_dirac),
                          opt(row.delta_rel_vs_dirac)});
  }
  table.notes.emplace_back("B_nonrel", "-epsilon");
  table.notes.emplace_back("B_rel", "M c^2 [1 - sqrt(1 + 2 epsilon / (M c^2))]");
  table.notes.emplace_back("B_dirac",
                           "external reference: exact Dirac-Coulomb binding for mass mu");
  detail::emit(r, table, preset.problem.units, out);
}

inline void run_kinematics(const RunOptions& o, std::ostream& out) {
  auto r = detail::resolve_common("kinematics", o);
  const auto betas = o.beta.value_or(std::vector<double>{0.6});
  const double m0 = o.mass.value_or(1.0);
  const double t = o.t.value_or(10.0);
  const auto units = kAtomicUnits;
  for (double b : betas) {
    if (!(std::abs(b) < 1.0)) throw DomainError("beta must satisfy |beta| < 1");
  }
  r.echo.emplace_back("beta", detail::join_doubles(betas));
  r.echo.emplace_back("mass", output::format_double(m0));
  r.echo.emplace_back("t", output::format_double(t));

  output::Table table;
  table.columns = {"beta", "gamma", "p", "E", "lambda", "omega_clock", "omega_wave",
                   "phase_residual", "chi_theta_ratio", "effective_mass",
                   "de_broglie_rel_error"};
  for (double b : betas) {
    const double v = b * units.c;
    const auto wave = kinematics::wave_from_particle(m0, v, units);
    const auto freq = kinematics::clock_and_wave_frequencies(m0, v, units);
    const double p = kinematics::momentum(m0, v, units);
    output::Cell lambda = std::monostate{};
    if (wave.lambda) lambda = *wave.lambda;
    output::Cell derived = std::monostate{};
    if (v != 0.0) {
      const auto d = kinematics::derive_de_broglie(m0, v, units);
      derived = std::abs(d.k - p / units.hbar) / std::abs(p / units.hbar);
    }
    table.rows.push_back({b, kinematics::lorentz_factor(v, units), p,
                          kinematics::total_energy(m0, p, units), lambda, freq.omega_clock,
                          freq.omega_wave, kinematics::check_phase_harmony(m0, v, t, units).residual,
                          inversion::dirac_theta_chi(m0, v, inversion::Branch::matter, units).ratio(),
                          inversion::effective_mass(m0, v, units), derived});
  }
  table.notes.emplace_back("lambda", "blank when p = 0");
  table.notes.emplace_back("phase_residual", "|phi_clock - phi_wave| on x = v t at time t");
  detail::emit(r, table, units, out);
}

inline void run_invert_demo(const RunOptions& o, std::ostream& out) {
  using namespace inversion;
  auto r = detail::resolve_common("invert-demo", o);
  const auto betas = o.beta.value_or(std::vector<double>{0.6});
  if (betas.size() != 1) throw DomainError("invert-demo takes a single --beta");
  const double beta = betas.front();
  if (!(std::abs(beta) < 1.0)) throw DomainError("beta must satisfy |beta| < 1");
  const double m0 = o.mass.value_or(1.0);
  const int points = o.points.value_or(50);
  if (points < 1) throw DomainError("--points must be positive");
  const std::uint64_t seed = o.seed.value_or(20240601);
  const auto units = kAtomicUnits;
  r.echo.emplace_back("beta", output::format_double(beta));
  r.echo.emplace_back("mass", output::format_double(m0));
  r.echo.emplace_back("points", std::to_string(points));
  r.echo.emplace_back("seed", std::to_string(seed));

  const double v = beta * units.c;
  const double p = kinematics::momentum(m0, v, units);
  const auto electron = make_lepton(m0, p, Branch::matter, {1.0, 0.0}, units);

  std::mt19937_64 rng(seed);
  const auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };

  output::Table table;
  table.columns = {"state", "branch", "Q", "L", "p", "E", "inverted_branch", "inverted_Q",
                   "inverted_L", "involution", "evaluation_identity_residual", "theta_abs",
                   "chi_abs", "inverted_theta_abs", "inverted_chi_abs"};
  for (const auto& [label, state] :
       {std::pair{std::string("electron"), electron},
        std::pair{std::string("positron"), spacetime_invert(electron)}}) {
    const auto inverted = spacetime_invert(state);
    double residual = 0.0;
    for (int k = 0; k < points; ++k) {
      const double x = uniform(-10.0, 10.0);
      const double t = uniform(-1.0, 1.0);
      residual = std::max(residual, std::abs(evaluate_plane_wave(inverted, x, t, units) -
                                             evaluate_plane_wave(state, -x, -t, units)));
    }
    const auto tc = dirac_theta_chi(m0, v, state.branch, units);
    const auto tc_inv = invert_theta_chi(tc);
    table.rows.push_back({label, std::string(to_string(state.branch)), std::int64_t{state.Q},
                          std::int64_t{state.L}, state.p, state.E,
                          std::string(to_string(inverted.branch)), std::int64_t{inverted.Q},
                          std::int64_t{inverted.L}, spacetime_invert(inverted) == state,
                          residual, std::abs(tc.theta), std::abs(tc.chi),
                          std::abs(tc_inv.theta), std::abs(tc_inv.chi)});
  }
  table.notes.emplace_back("evaluation_identity_residual",
                           "max |psi_inverted(x,t) - psi(-x,-t)| over random (x,t)");
  detail::emit(r, table, units, out);
}

inline void run_convergence(const RunOptions& o, std::ostream& out) {
  auto r = detail::resolve_common("convergence", o);
  const auto preset = load_preset(o.preset.value_or("oscillator"));
  const auto method = o.method ? parse_solver_method(*o.method) : SolverMethod::fd;
  const int state = o.state.value_or(0);
  const int levels = o.levels.value_or(4);
  if (levels < 3) throw DomainError("--levels must be at least 3");
  RadialProblem problem = preset.problem;
  problem.l = o.l.value_or(0);
  GridSpec base = detail::resolve_grid(preset.grid_for(method), o);
  if (!o.n_points) base.n = 201;
  const auto exact = exact_level(problem, state);
  if (!exact) throw DomainError("preset '" + preset.name + "' has no analytic reference");

  std::vector<GridSpec> grids;
  for (int k = 0; k < levels; ++k) {
    grids.push_back({base.r_min, base.r_max, (base.n - 1) * (std::size_t{1} << k) + 1});
  }
  detail::echo_problem(r.echo, preset);
  r.echo.emplace_back("method", std::string(to_string(method)));
  r.echo.emplace_back("state", std::to_string(state));
  r.echo.emplace_back("l", std::to_string(problem.l));
  r.echo.emplace_back("levels", std::to_string(levels));
  detail::echo_grid(r.echo, base);
  if (o.plot_prefix) r.echo.emplace_back("plot-prefix", *o.plot_prefix);

  const auto study = convergence_study(problem, grids, method, state, *exact);
  output::Table table;
  table.columns = {"h", "n_points", "epsilon", "error"};
  for (std::size_t i = 0; i < grids.size(); ++i) {
    table.rows.push_back({study.steps[i], static_cast<std::int64_t>(grids[i].n),
                          study.epsilons[i], study.errors[i]});
  }
  table.notes.emplace_back("exact", output::format_double(*exact));
  table.notes.emplace_back("slope", output::format_double(study.slope));
  detail::emit(r, table, problem.units, out);
  if (o.plot_prefix) {
    detail::write_plot(*o.plot_prefix + ".dat", r, problem.units,
                       {{"columns", "h error"}, {"slope", output::format_double(study.slope)}},
                       study.steps, study.errors);
  }
}

// ---------------------------------------------------------------------------

/// Parses argv and runs one command; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Stationary Schrodinger eigenproblems with relativistic binding energies"};
  app.require_subcommand(1);
  RunOptions o;

  const auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config, "flat key=value config file (flags override it)");
    cmd->add_option("--format", o.format, "csv or json");
    cmd->add_option("--output,-o", o.output, "output file (default: stdout)");
  };
  const auto add_problem = [&](CLI::App* cmd) {
    cmd->add_option("--preset", o.preset, "named system");
    cmd->add_option("--n-max", o.n_max, "number of states");
    cmd->add_option("--method", o.method, "fd or numerov");
    cmd->add_option("--l", o.l, "angular momentum");
    cmd->add_option("--r-min", o.r_min, "grid start");
    cmd->add_option("--r-max", o.r_max, "grid end");
    cmd->add_option("--n-points", o.n_points, "grid points");
    cmd->add_option("--plot-prefix", o.plot_prefix, "write two-column plot data files");
  };

  auto* solve = app.add_subcommand("solve", "lowest eigenstates of a preset system");
  add_problem(solve);
  add_output(solve);

  auto* compare = app.add_subcommand("compare", "binding energy comparison report");
  compare->add_option("--preset", o.preset, "hydrogen, hydrogen_finite_mass, positronium, oscillator");
  compare->add_option("--n-max", o.n_max, "highest principal quantum number / state count");
  compare->add_option("--epsilon-source", o.epsilon_source, "auto, analytic, fd or numerov");
  add_output(compare);

  auto* kin = app.add_subcommand("kinematics", "relativistic kinematics and phase harmony table");
  kin->add_option("--beta", o.beta, "velocities v/c")->delimiter(',');
  kin->add_option("--mass", o.mass, "rest mass (electron masses)");
  kin->add_option("--t", o.t, "time for the phase comparison");
  add_output(kin);

  auto* inv = app.add_subcommand("invert-demo", "space-time inversion table");
  inv->add_option("--beta", o.beta, "velocity v/c of the plane wave");
  inv->add_option("--mass", o.mass, "rest mass");
  inv->add_option("--points", o.points, "random (x, t) samples");
  inv->add_option("--seed", o.seed, "sample seed");
  add_output(inv);

  auto* conv = app.add_subcommand("convergence", "measured convergence order");
  add_problem(conv);
  conv->add_option("--state", o.state, "state index");
  conv->add_option("--levels", o.levels, "number of grids (each halves h)");
  add_output(conv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    detail::merge_config_file(o);
    if (solve->parsed()) run_solve(o, out);
    if (compare->parsed()) run_compare(o, out);
    if (kin->parsed()) run_kinematics(o, out);
    if (inv->parsed()) run_invert_demo(o, out);
    if (conv->parsed()) run_convergence(o, out);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kSuccess;
}

}  // namespace rsse::cli
