#pragma once

#include <string>

#include "crib/types.hpp"

namespace crib {

enum class ShiftMechanism { Zeeman, DcStark, AcStark };

std::string to_string(ShiftMechanism mechanism);
ShiftMechanism shiftMechanismFromString(const std::string& name);

/// Linear map from an applied external field to a transition-frequency
/// shift, in physical units. The ac Stark shift scales with intensity and
/// inversely with the laser detuning; inverting the detuning inverts the
/// shift's sign.
struct PhysicalShiftModel {
  ShiftMechanism mechanism = ShiftMechanism::Zeeman;
  Real coefficientMHz = 13.0;          // per field unit at the reference point
  Real referenceDetuningNm = 10.0;     // AcStark reference laser detuning
  Real laserDetuningNm = 10.0;         // AcStark operating detuning (signed)
};

PhysicalShiftModel zeemanShiftModel();     // ~13 MHz per mT
PhysicalShiftModel dcStarkShiftModel();    // ~100 kHz per V/cm
PhysicalShiftModel acStarkShiftModel(Real laserDetuningNm = 10.0);  // ~200 MHz per 1e9 W/m^2

/// Shift in MHz. Field strength is mT (Zeeman), V/cm (dc Stark), or units
/// of 1e9 W/m^2 (ac Stark intensity).
Real shiftFromField(const PhysicalShiftModel& model, Real fieldStrength);

}  // namespace crib
