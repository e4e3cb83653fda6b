#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rsse/errors.hpp"
#include "rsse/units.hpp"

namespace rsse {

/// V(x) = mu omega^2 x^2 / 2.
struct Harmonic {
  double omega{1.0};
};

/// V(r) = -Z alpha hbar c / r; always a radial problem.
struct Coulomb {
  double Z{1.0};
};

/// V(x) = -V0 for |x| <= a/2, zero outside.
struct FiniteWell {
  double V0{1.0};
  double a{1.0};
};

/// V = 0 on [0, a]; the grid must lie inside the box, whose walls are the
/// Dirichlet boundaries.
struct InfiniteWell {
  double a{1.0};
};

/// Piecewise-linear interpolation of sampled values.
struct Tabulated {
  std::vector<double> r;
  std::vector<double> V;
};

using PotentialSpec = std::variant<Harmonic, Coulomb, FiniteWell, InfiniteWell, Tabulated>;

inline std::string_view potential_name(const PotentialSpec& spec) {
  struct Visitor {
    std::string_view operator()(const Harmonic&) const { return "harmonic"; }
    std::string_view operator()(const Coulomb&) const { return "coulomb"; }
    std::string_view operator()(const FiniteWell&) const { return "finite_well"; }
    std::string_view operator()(const InfiniteWell&) const { return "infinite_well"; }
    std::string_view operator()(const Tabulated&) const { return "tabulated"; }
  };
  return std::visit(Visitor{}, spec);
}

inline void validate(const PotentialSpec& spec) {
  struct Visitor {
    void operator()(const Harmonic& p) const {
      if (!(p.omega > 0.0)) throw DomainError("harmonic potential needs omega > 0");
    }
    void operator()(const Coulomb& p) const {
      if (!(p.Z > 0.0)) throw DomainError("coulomb potential needs Z > 0");
    }
    void operator()(const FiniteWell& p) const {
      if (!(p.V0 > 0.0) || !(p.a > 0.0)) {
        throw DomainError("finite well needs V0 > 0 and a > 0");
      }
    }
    void operator()(const InfiniteWell& p) const {
      if (!(p.a > 0.0)) throw DomainError("infinite well needs a > 0");
    }
    void operator()(const Tabulated& p) const {
      if (p.r.size() < 2 || p.r.size() != p.V.size()) {
        throw DomainError("tabulated potential needs matching r/V samples (at least 2)");
      }
      for (std::size_t i = 1; i < p.r.size(); ++i) {
        if (!(p.r[i] > p.r[i - 1])) {
          throw DomainError("tabulated potential samples must be strictly increasing in r");
        }
      }
    }
  };
  std::visit(Visitor{}, spec);
}

/// V(r) for a particle of (reduced) mass `mass`.
inline double potential_value(const PotentialSpec& spec, double r, double mass,
                              const UnitSystem& units) {
  struct Visitor {
    double r;
    double mass;
    const UnitSystem& units;
    double operator()(const Harmonic& p) const {
      return 0.5 * mass * p.omega * p.omega * r * r;
    }
    double operator()(const Coulomb& p) const {
      if (r <= 0.0) {
        throw DomainError("coulomb potential is singular at r = 0; use a grid with r_min > 0");
      }
      return -p.Z * units.coulomb_coupling() / r;
    }
    double operator()(const FiniteWell& p) const {
      return std::abs(r) <= 0.5 * p.a ? -p.V0 : 0.0;
    }
    double operator()(const InfiniteWell& p) const {
      // Small tolerance so grids spanning exactly [0, a] are accepted.
      const double slack = 1e-12 * p.a;
      if (r < -slack || r > p.a + slack) {
        throw DomainError("infinite well grid must lie inside [0, a]");
      }
      return 0.0;
    }
    double operator()(const Tabulated& p) const {
      const double slack = 1e-12 * (p.r.back() - p.r.front());
      if (r < p.r.front() - slack || r > p.r.back() + slack) {
        throw DomainError("grid point outside the tabulated potential range");
      }
      if (r <= p.r.front()) return p.V.front();
      if (r >= p.r.back()) return p.V.back();
      const auto it = std::upper_bound(p.r.begin(), p.r.end(), r);
      const auto hi = static_cast<std::size_t>(it - p.r.begin());
      const std::size_t lo = hi - 1;
      const double w = (r - p.r[lo]) / (p.r[hi] - p.r[lo]);
      return (1.0 - w) * p.V[lo] + w * p.V[hi];
    }
  };
  return std::visit(Visitor{r, mass, units}, spec);
}

/// lim V(r) for r -> infinity; bound states lie below it.
inline double asymptotic_value(const PotentialSpec& spec) {
  struct Visitor {
    double operator()(const Harmonic&) const { return std::numeric_limits<double>::infinity(); }
    double operator()(const Coulomb&) const { return 0.0; }
    double operator()(const FiniteWell&) const { return 0.0; }
    double operator()(const InfiniteWell&) const { return std::numeric_limits<double>::infinity(); }
    double operator()(const Tabulated& p) const { return p.V.back(); }
  };
  return std::visit(Visitor{}, spec);
}

inline bool is_coulomb(const PotentialSpec& spec) {
  return std::holds_alternative<Coulomb>(spec);
}

}  // namespace rsse
