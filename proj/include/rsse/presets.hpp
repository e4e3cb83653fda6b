#pragma once

// Named systems with their default grids. Every number quoted in reports and
// acceptance checks refers to one of these presets.
//
// A preset may be overridden or added by a file <name>.preset in the
// directory named by RSSE_PRESET_DIR, holding flat key=value lines:
//
//   potential = coulomb | harmonic | finite_well | infinite_well | tabulated
//   Z, omega, V0, a          potential parameters
//   table = path             two-column r V file (tabulated only)
//   mass = m  |  m1 = .., m2 = ..
//   fd_r_min, fd_r_max, fd_n, numerov_r_min, numerov_r_max, numerov_n
//   method = fd | numerov
//
// Lines starting with '#' are ignored.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rsse/eigensolver.hpp"
#include "rsse/errors.hpp"
#include "rsse/hamiltonian.hpp"
#include "rsse/spectra.hpp"

namespace rsse {

struct SystemPreset {
  std::string name;
  /// l = 0 template; callers set l per state.
  RadialProblem problem;
  GridSpec fd_grid;
  GridSpec numerov_grid;
  SolverMethod default_method{SolverMethod::numerov};

  [[nodiscard]] const GridSpec& grid_for(SolverMethod m) const {
    return m == SolverMethod::fd ? fd_grid : numerov_grid;
  }
};

inline const std::vector<std::string>& builtin_preset_names() {
  static const std::vector<std::string> names{"hydrogen",    "coulomb",       "hydrogen_finite_mass",
                                              "positronium", "oscillator",    "infinite_well",
                                              "finite_well"};
  return names;
}

namespace detail {

inline std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

inline std::optional<SystemPreset> builtin_preset(const std::string& name) {
  const double proton = kProtonElectronMassRatio;
  if (name == "hydrogen" || name == "coulomb") {
    return SystemPreset{name, make_single_particle(Coulomb{1.0}, 1.0), {1e-4, 30.0, 2000},
                        {1e-5, 60.0, 30000}, SolverMethod::numerov};
  }
  if (name == "hydrogen_finite_mass") {
    return SystemPreset{name, reduce_two_body(1.0, proton, Coulomb{1.0}), {1e-4, 30.0, 2000},
                        {1e-5, 60.0, 30000}, SolverMethod::numerov};
  }
  if (name == "positronium") {
    return SystemPreset{name, reduce_two_body(1.0, 1.0, Coulomb{1.0}), {2e-4, 60.0, 2000},
                        {1e-5, 120.0, 60000}, SolverMethod::numerov};
  }
  if (name == "oscillator") {
    return SystemPreset{name, make_single_particle(Harmonic{1.0}, 1.0), {-12.0, 12.0, 3000},
                        {-12.0, 12.0, 3000}, SolverMethod::fd};
  }
  if (name == "infinite_well") {
    return SystemPreset{name, make_single_particle(InfiniteWell{1.0}, 1.0), {0.0, 1.0, 2000},
                        {0.0, 1.0, 2000}, SolverMethod::fd};
  }
  if (name == "finite_well") {
    return SystemPreset{name, make_single_particle(FiniteWell{10.0, 2.0}, 1.0),
                        {-10.0, 10.0, 4000}, {-10.0, 10.0, 4000}, SolverMethod::fd};
  }
  return std::nullopt;
}

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace detail

/// Flat key=value parser shared by preset and config files.
inline std::map<std::string, std::string> parse_key_values(std::istream& in,
                                                           const std::string& origin) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = detail::trim(line.substr(0, line.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw DomainError(origin + ":" + std::to_string(lineno) + ": expected key=value");
    }
    out[detail::trim(text.substr(0, eq))] = detail::trim(text.substr(eq + 1));
  }
  return out;
}

namespace detail {

inline double number(const std::map<std::string, std::string>& kv, const std::string& key,
                     double fallback) {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw DomainError("preset key '" + key + "' is not a number: " + it->second);
  }
}

inline Tabulated read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open potential table " + path.string());
  Tabulated table;
  std::string line;
  while (std::getline(in, line)) {
    const auto text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    std::istringstream row(text);
    double r = 0.0;
    double v = 0.0;
    if (!(row >> r >> v)) throw DomainError("malformed potential table line: " + text);
    table.r.push_back(r);
    table.V.push_back(v);
  }
  return table;
}

inline SystemPreset preset_from_file(const std::string& name, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open preset file " + path.string());
  const auto kv = parse_key_values(in, path.string());

  const auto kind_it = kv.find("potential");
  if (kind_it == kv.end()) throw DomainError(path.string() + ": missing 'potential'");
  const auto& kind = kind_it->second;
  PotentialSpec potential;
  if (kind == "coulomb") {
    potential = Coulomb{number(kv, "Z", 1.0)};
  } else if (kind == "harmonic") {
    potential = Harmonic{number(kv, "omega", 1.0)};
  } else if (kind == "finite_well") {
    potential = FiniteWell{number(kv, "V0", 1.0), number(kv, "a", 1.0)};
  } else if (kind == "infinite_well") {
    potential = InfiniteWell{number(kv, "a", 1.0)};
  } else if (kind == "tabulated") {
    const auto t = kv.find("table");
    if (t == kv.end()) throw DomainError(path.string() + ": tabulated potential needs 'table'");
    std::filesystem::path table = t->second;
    if (table.is_relative()) table = path.parent_path() / table;
    potential = read_table(table);
  } else {
    throw DomainError("unknown potential '" + kind + "' in " + path.string());
  }

  RadialProblem problem = kv.count("m1") != 0 || kv.count("m2") != 0
                              ? reduce_two_body(number(kv, "m1", 1.0), number(kv, "m2", 1.0),
                                                potential)
                              : make_single_particle(potential, number(kv, "mass", 1.0));
  const auto grid = [&](const std::string& prefix) {
    return GridSpec{number(kv, prefix + "_r_min", 0.0), number(kv, prefix + "_r_max", 1.0),
                    static_cast<std::size_t>(number(kv, prefix + "_n", 2000))};
  };
  SystemPreset preset{name, problem, grid("fd"), grid("numerov"), SolverMethod::numerov};
  if (const auto m = kv.find("method"); m != kv.end()) {
    preset.default_method = parse_solver_method(m->second);
  }
  return preset;
}

}  // namespace detail

/// Resolves a preset by name, consulting RSSE_PRESET_DIR first.
inline SystemPreset load_preset(const std::string& name) {
  if (const char* dir = std::getenv("RSSE_PRESET_DIR"); dir != nullptr && *dir != '\0') {
    const auto path = std::filesystem::path(dir) / (name + ".preset");
    if (std::filesystem::exists(path)) return detail::preset_from_file(name, path);
  }
  if (auto preset = detail::builtin_preset(name)) return *preset;
  throw DomainError("unknown preset '" + name + "'; valid presets: " +
                    detail::join(builtin_preset_names()));
}

/// Exact eigenvalue of state `nodes` with angular momentum `l`, when a closed
/// form exists for the preset's potential on its grid.
inline std::optional<double> exact_level(const RadialProblem& problem, int nodes) {
  const auto& units = problem.units;
  if (const auto* c = std::get_if<Coulomb>(&problem.potential)) {
    return spectra::bohr_level(c->Z, problem.mu, nodes + problem.l + 1, units);
  }
  if (problem.l != 0) return std::nullopt;
  if (const auto* h = std::get_if<Harmonic>(&problem.potential)) {
    return spectra::oscillator_level(h->omega, nodes, units);
  }
  if (const auto* w = std::get_if<InfiniteWell>(&problem.potential)) {
    return spectra::infinite_well_level(w->a, problem.mu, nodes, units);
  }
  return std::nullopt;
}

}  // namespace rsse
