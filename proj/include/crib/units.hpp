#pragma once

#include "crib/types.hpp"

namespace crib {

// Dimensionless solver units: c = 1, the input-pulse duration Tp = 1, and
// the length unit is c*Tp. Everything the solver touches is expressed in
// these units; the helpers below are the only bridge to physical units.
struct UnitsContract {
  Real speedOfLight = 1.0;
  Real pulseDuration = 1.0;
  Real lengthUnit = 1.0;  // c * Tp
};

// Angular detuning in solver units for a physical frequency shift,
// given the physical pulse duration that defines the time unit.
inline Real detuningFromMHz(Real shiftMHz, Real pulseDurationSeconds) {
  return 2.0 * kPi * shiftMHz * 1.0e6 * pulseDurationSeconds;
}

inline Real mhzFromDetuning(Real detuning, Real pulseDurationSeconds) {
  return detuning / (2.0 * kPi * 1.0e6 * pulseDurationSeconds);
}

}  // namespace crib
