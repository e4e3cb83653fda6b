#pragma once

#include "rsse/binding_report.hpp"
#include "rsse/eigensolver.hpp"
#include "rsse/errors.hpp"
#include "rsse/grid.hpp"
#include "rsse/hamiltonian.hpp"
#include "rsse/inversion.hpp"
#include "rsse/kinematics.hpp"
#include "rsse/potential.hpp"
#include "rsse/presets.hpp"
#include "rsse/spectra.hpp"
#include "rsse/tridiagonal.hpp"
#include "rsse/units.hpp"
