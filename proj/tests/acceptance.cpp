// Acceptance runner: one [PASS]/[FAIL] line per criterion.
//   rsse_acceptance        run every criterion
//   rsse_acceptance 4 7    run the listed criteria
// Exit status is nonzero if any selected criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "rsse/cli.hpp"
#include "rsse/rsse.hpp"

namespace {

using namespace rsse;
constexpr double alpha = kFineStructure;
constexpr double c = kAtomicUnits.c;
constexpr double c2 = kAtomicUnits.c2();

/// Collects individual checks; a criterion passes when all of them hold.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void near(double actual, double expected, double tol, const std::string& what) {
    expect(std::abs(actual - expected) <= tol,
           fmt::format("{}: got {:.17g}, expected {:.17g} +/- {:.3g} (off by {:.3g})", what,
                       actual, expected, tol, std::abs(actual - expected)));
  }
  void info(const std::string& line) { info_.push_back(line); }
  [[nodiscard]] bool ok() const { return failures_.empty(); }
  [[nodiscard]] const std::vector<std::string>& failures() const { return failures_; }
  [[nodiscard]] const std::vector<std::string>& infos() const { return info_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> info_;
};

void ground_state_identity(Checks& k) {
  const double b_rel = spectra::binding_relativistic(-0.5 * c2 * alpha * alpha, 1.0);
  const double b_dirac = c2 * alpha * alpha / (1.0 + std::sqrt(1.0 - alpha * alpha));
  // Independent evaluation of the Dirac side through the level formula.
  const double b_level = spectra::dirac_coulomb_level(1.0, 1, 0.5).B;
  k.near(b_rel / b_dirac, 1.0, 1e-12, "B_rel / mc^2(1 - sqrt(1 - alpha^2))");
  k.near(b_rel / b_level, 1.0, 1e-12, "B_rel / B_dirac(1s1/2)");
  k.info(fmt::format("B_rel = {:.17g}, B_dirac = {:.17g}", b_rel, b_level));
}

void approximation_claim(Checks& k) {
  const auto row = compare_report("hydrogen", 1).rows.at(0);
  const double term = row.epsilon * row.epsilon / (2.0 * c2);
  const double diff = row.B_rel - row.B_nonrel;
  k.near(diff / term, 1.0, 0.01, "(B_rel - B_nonrel) / (eps^2 / 2Mc^2)");
  k.info(fmt::format("B_rel - B_nonrel = {:.6e} hartree = {:.4e} eV", diff,
                     convert_energy(diff, EnergyUnit::hartree, EnergyUnit::eV)));
}

void excited_state_discrepancy(Checks& k) {
  const auto report = compare_report("hydrogen", 2);
  const BindingRow* s = nullptr;
  const BindingRow* p_half = nullptr;
  const BindingRow* p_three = nullptr;
  for (const auto& row : report.rows) {
    if (row.state == "2s1/2") s = &row;
    if (row.state == "2p1/2") p_half = &row;
    if (row.state == "2p3/2") p_three = &row;
  }
  if (s == nullptr || p_half == nullptr || p_three == nullptr) {
    k.expect(false, "n = 2 rows missing from the report");
    return;
  }
  const double a4mc2 = std::pow(alpha, 4) * c2;
  k.expect(s->B_rel == p_half->B_rel && p_half->B_rel == p_three->B_rel,
           "B_rel is the same for every j at n = 2");
  k.expect(*p_half->B_dirac != *p_three->B_dirac, "B_dirac(2,1/2) != B_dirac(2,3/2)");
  const double split = *p_half->B_dirac - *p_three->B_dirac;
  k.near(split / (a4mc2 / 32.0), 1.0, 0.05, "2P fine-structure splitting / (alpha^4 mc^2 / 32)");
  const double gap = std::abs(p_half->B_rel - *p_half->B_dirac);
  k.expect(gap > 1e-3 * a4mc2 && gap < a4mc2,
           fmt::format("|B_rel(n=2) - B_dirac(2,1/2)| = {:.3e} is O(alpha^4 mc^2 = {:.3e})", gap,
                       a4mc2));
  k.info(fmt::format("splitting = {:.6e}, |B_rel - B_dirac(2,1/2)| = {:.6e}", split, gap));
}

void eigensolver_oracles(Checks& k) {
  const auto hydrogen = load_preset("hydrogen");
  const double h_numerov =
      solve_numerov_lowest(hydrogen.problem, hydrogen.numerov_grid, 1).epsilons[0];
  k.near(h_numerov, -0.5, 1e-6, "hydrogen eps_1 (numerov preset)");

  const double h_fd =
      solve_lowest_k(assemble_tridiagonal(hydrogen.problem, hydrogen.fd_grid), 1).epsilons[0];
  k.near(h_fd, -0.5, 5e-4, "hydrogen eps_1 (fd preset, n = 2000)");

  const auto osc = load_preset("oscillator");
  const auto levels = solve_lowest_k(assemble_tridiagonal(osc.problem, {-12.0, 12.0, 3000}), 5);
  for (int n = 0; n < 5; ++n) {
    k.near(levels.epsilons[static_cast<std::size_t>(n)], n + 0.5, 1e-5,
           fmt::format("oscillator eps_{} (fd, n = 3000)", n));
  }
  const double h = 24.0 / 2999.0;
  std::string predicted;
  for (int n = 0; n < 5; ++n) {
    predicted += fmt::format(" {:.2e}", -(h * h / 6.0) * (3.0 / 16.0) * (2.0 * n * n + 2.0 * n + 1.0));
  }
  k.info("three-point stencil truncation -(h^2/6)<T^2> for eps_0..eps_4:" + predicted);

  const auto ps = load_preset("positronium");
  const double ps_numerov = solve_numerov_lowest(ps.problem, ps.numerov_grid, 1).epsilons[0];
  k.near(ps_numerov, -0.25, 1e-6, "positronium eps_1 (numerov preset)");
}

void convergence_orders(Checks& k) {
  const auto osc = load_preset("oscillator");
  std::vector<GridSpec> grids;
  for (std::size_t n : {201u, 401u, 801u, 1601u}) grids.push_back({-12.0, 12.0, n});
  const double fd = convergence_order(osc.problem, grids, SolverMethod::fd, 0, 0.5);
  const double numerov = convergence_order(osc.problem, grids, SolverMethod::numerov, 0, 0.5);
  k.near(fd, 2.0, 0.1, "fd slope");
  k.near(numerov, 4.0, 0.3, "numerov slope");
  k.info(fmt::format("slopes: fd {:.4f}, numerov {:.4f}", fd, numerov));
}

void de_broglie_uniqueness(Checks& k) {
  double worst_k = 0.0;
  double worst_phase = 0.0;
  for (int i = 1; i <= 19; ++i) {
    const double beta = 0.05 * i;
    const double v = beta * c;
    const double p = kinematics::momentum(1.0, v);
    const auto d = kinematics::derive_de_broglie(1.0, v);
    const double rel = std::abs(d.k - p) / p;
    worst_k = std::max(worst_k, rel);
    k.expect(rel < 1e-9, fmt::format("k = p / hbar at beta {:.2f} (rel err {:.3e})", beta, rel));
    const double phase = kinematics::check_phase_harmony(1.0, v, 10.0).residual;
    worst_phase = std::max(worst_phase, phase);
    k.expect(phase < 1e-10, fmt::format("phase harmony at beta {:.2f} ({:.3e})", beta, phase));
  }
  k.info(fmt::format("worst k rel err {:.3e}, worst phase residual {:.3e}", worst_k, worst_phase));
}

void inversion_postulates(Checks& k) {
  using namespace inversion;
  const auto electron = make_lepton(1.0, kinematics::momentum(1.0, 0.6 * c), Branch::matter,
                                    std::polar(1.0, 0.3));
  const auto positron = spacetime_invert(electron);
  k.expect(spacetime_invert(positron) == electron, "invert(invert(w)) == w");
  k.expect(electron.Q == -1 && electron.L == 1, "electron has Q = -1, L = +1");
  k.expect(positron.Q == 1 && positron.L == -1, "inverted electron has Q = +1, L = -1");
  k.expect(positron.branch == Branch::antimatter, "inverted electron is on the antimatter branch");

  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> ux(-10.0, 10.0);
  std::uniform_real_distribution<double> ut(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = ux(rng);
    const double t = ut(rng);
    worst = std::max(worst, std::abs(evaluate_plane_wave(positron, x, t) -
                                     evaluate_plane_wave(electron, -x, -t)));
  }
  k.expect(worst <= 1e-12, fmt::format("evaluation identity on 50 points ({:.3e})", worst));
  k.info(fmt::format("evaluation identity residual {:.3e}", worst));
}

void theta_chi_picture(Checks& k) {
  using namespace inversion;
  k.expect(dirac_theta_chi(1.0, 0.0, Branch::matter).ratio() == 0.0, "ratio(v = 0) == 0");
  double previous = -1.0;
  bool monotone = true;
  for (int i = 0; i < 100; ++i) {
    const double r = dirac_theta_chi(1.0, 0.999 * c * i / 99.0, Branch::matter).ratio();
    monotone = monotone && r > previous;
    previous = r;
  }
  k.expect(monotone, "ratio strictly increasing over 100 speeds");
  k.near(dirac_theta_chi(1.0, 0.6 * c, Branch::matter).ratio(), 1.0 / 3.0, 1e-12, "ratio(0.6c)");
  const double fast = dirac_theta_chi(1.0, 0.9999999 * c, Branch::matter).ratio();
  k.expect(fast > 0.999 && fast < 1.0, fmt::format("ratio(0.9999999c) = {:.9f} > 0.999", fast));
  k.near(effective_mass(1.0, 0.6 * c), 1.25, 1e-12, "effective mass at beta 0.6");
  for (double beta : {0.99995, 0.99996, 0.99999}) {
    k.expect(effective_mass(1.0, beta * c) > 100.0,
             fmt::format("effective mass > 100 at beta {}", beta));
  }
}

void time_reversal(Checks& k) {
  const GridSpec grid{1e-4, 30.0, 3000};
  std::vector<std::complex<double>> psi(grid.n);
  std::vector<double> potential(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double r = grid.at(i);
    psi[i] = 2.0 * r * std::exp(-r);
    potential[i] = -1.0 / r;
  }
  const double analytic = inversion::time_reversal_check(psi, -0.5, potential, grid, 1.0);
  const double h = grid.step();
  const double discretization = h * h / 24.0 * 8.0 / (2.0 * std::exp(-1.0));
  k.expect(analytic <= 2.0 * discretization,
           fmt::format("analytic 1s residual {:.3e} within stencil error {:.3e}", analytic,
                       discretization));

  const auto osc = load_preset("oscillator");
  const GridSpec ref{-12.0, 12.0, 3000};
  const auto result = solve_lowest_k(assemble_tridiagonal(osc.problem, ref), 4);
  const std::vector<std::complex<double>> state(result.wavefunctions[3].begin(),
                                                result.wavefunctions[3].end());
  const double numeric = inversion::time_reversal_check(
      state, result.epsilons[3], effective_potential_samples(osc.problem, ref), ref, 1.0);
  k.expect(numeric < 1e-6, fmt::format("oscillator n = 3 residual {:.3e} < 1e-6", numeric));
  k.info(fmt::format("residuals: analytic 1s {:.3e}, oscillator n=3 {:.3e}", analytic, numeric));
}

void determinism(Checks& k) {
  const auto dir = std::filesystem::temp_directory_path() / "rsse_acceptance";
  std::filesystem::create_directories(dir);
  std::vector<std::string> files;
  for (const char* name : {"first.csv", "second.csv"}) {
    const auto path = (dir / name).string();
    const char* argv[] = {"rsse", "compare", "--preset", "hydrogen", "--n-max", "2", "-o",
                          path.c_str()};
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(8, argv, out, err);
    k.expect(code == 0, "compare exited with " + std::to_string(code) + ": " + err.str());
    std::ifstream in(path, std::ios::binary);
    files.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  k.expect(!files[0].empty(), "report is non-empty");
  k.expect(files[0] == files[1], "two runs produce byte-identical files");
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Checks&)> body;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "ground-state identity", ground_state_identity},
      {2, "approximation term", approximation_claim},
      {3, "excited-state discrepancy", excited_state_discrepancy},
      {4, "eigensolver oracle equivalence", eigensolver_oracles},
      {5, "convergence orders", convergence_orders},
      {6, "de Broglie uniqueness", de_broglie_uniqueness},
      {7, "inversion postulates", inversion_postulates},
      {8, "theta/chi picture", theta_chi_picture},
      {9, "time-reversal equivalence", time_reversal},
      {10, "determinism", determinism},
  };
  return all;
}

bool run_one(const Criterion& c) {
  Checks k;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.body(k);
  } catch (const std::exception& e) {
    k.expect(false, std::string("exception: ") + e.what());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << fmt::format("[{}] {} {} ({:.2f} s)\n", k.ok() ? "PASS" : "FAIL", c.id, c.name,
                           seconds);
  for (const auto& line : k.infos()) std::cout << "       " << line << '\n';
  for (const auto& line : k.failures()) std::cout << "       failed: " << line << '\n';
  return k.ok();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    char* end = nullptr;
    const long id = std::strtol(argv[i], &end, 10);
    if (end == argv[i] || *end != '\0' || id < 1 || id > static_cast<long>(criteria().size())) {
      std::cerr << "usage: rsse_acceptance [criterion id ...]\n";
      return 2;
    }
    selected.push_back(static_cast<int>(id));
  }
  if (selected.empty()) {
    for (const auto& c : criteria()) selected.push_back(c.id);
  }
  int failed = 0;
  for (int id : selected) {
    if (!run_one(criteria()[static_cast<std::size_t>(id - 1)])) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
