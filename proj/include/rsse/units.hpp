#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "rsse/errors.hpp"

namespace rsse {

/// CODATA 2018 fine-structure constant.
inline constexpr double kFineStructure = 0.0072973525693;
/// CODATA 2018 hartree energy in eV.
inline constexpr double kHartreeInEv = 27.211386245988;
/// CODATA 2018 proton-to-electron mass ratio.
inline constexpr double kProtonElectronMassRatio = 1836.15267343;

/// Scale factors that fix the meaning of every number passed between modules.
/// Energies are expressed in `energy_unit_name`, masses in multiples of
/// `mass_unit`. The Coulomb coupling is always `kFineStructure * hbar * c`.
struct UnitSystem {
  double hbar{1.0};
  double c{1.0 / kFineStructure};
  double mass_unit{1.0};
  std::string_view energy_unit_name{"hartree"};

  [[nodiscard]] constexpr double planck() const noexcept {
    return 2.0 * std::numbers::pi * hbar;
  }
  [[nodiscard]] constexpr double c2() const noexcept { return c * c; }
  /// e^2 / (4 pi eps0) expressed in this system.
  [[nodiscard]] constexpr double coulomb_coupling() const noexcept {
    return kFineStructure * hbar * c;
  }
};

/// Builds a unit system, rejecting non-positive scale factors.
inline UnitSystem make_unit_system(double hbar, double c, double mass_unit,
                                   std::string_view energy_unit_name) {
  if (!(hbar > 0.0) || !(c > 0.0) || !(mass_unit > 0.0)) {
    throw DomainError("unit system scale factors must be strictly positive");
  }
  return UnitSystem{hbar, c, mass_unit, energy_unit_name};
}

/// hbar = m_e = 1, c = 1/alpha, energies in hartree.
inline constexpr UnitSystem make_atomic_units() noexcept { return UnitSystem{}; }

inline constexpr UnitSystem kAtomicUnits = make_atomic_units();

enum class EnergyUnit { hartree, eV, MeV };

inline EnergyUnit parse_energy_unit(std::string_view label) {
  if (label == "hartree") return EnergyUnit::hartree;
  if (label == "eV") return EnergyUnit::eV;
  if (label == "MeV") return EnergyUnit::MeV;
  throw DomainError("unknown energy unit '" + std::string(label) +
                    "' (expected hartree, eV or MeV)");
}

inline constexpr std::string_view to_string(EnergyUnit unit) noexcept {
  switch (unit) {
    case EnergyUnit::hartree: return "hartree";
    case EnergyUnit::eV: return "eV";
    case EnergyUnit::MeV: return "MeV";
  }
  return "?";
}

namespace detail {
inline constexpr double electron_volts_per(EnergyUnit unit) noexcept {
  switch (unit) {
    case EnergyUnit::hartree: return kHartreeInEv;
    case EnergyUnit::eV: return 1.0;
    case EnergyUnit::MeV: return 1.0e6;
  }
  return 1.0;
}
}  // namespace detail

inline constexpr double convert_energy(double value, EnergyUnit from,
                                       EnergyUnit to) noexcept {
  if (from == to) return value;
  return value * detail::electron_volts_per(from) /
         detail::electron_volts_per(to);
}

inline double convert_energy(double value, std::string_view from,
                             std::string_view to) {
  return convert_energy(value, parse_energy_unit(from), parse_energy_unit(to));
}

}  // namespace rsse
