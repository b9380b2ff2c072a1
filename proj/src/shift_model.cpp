#include "crib/shift_model.hpp"

#include <cmath>

#include "crib/errors.hpp"

namespace crib {

std::string to_string(ShiftMechanism mechanism) {
  switch (mechanism) {
    case ShiftMechanism::Zeeman: return "zeeman";
    case ShiftMechanism::DcStark: return "dcStark";
    case ShiftMechanism::AcStark: return "acStark";
  }
  return "zeeman";
}

ShiftMechanism shiftMechanismFromString(const std::string& name) {
  if (name == "zeeman") return ShiftMechanism::Zeeman;
  if (name == "dcStark") return ShiftMechanism::DcStark;
  if (name == "acStark") return ShiftMechanism::AcStark;
  throw ConfigError("unknown shift mechanism '" + name + "'");
}

PhysicalShiftModel zeemanShiftModel() {
  // Bohr magneton over Planck's constant.
  return PhysicalShiftModel{ShiftMechanism::Zeeman, 13.0, 0.0, 0.0};
}

PhysicalShiftModel dcStarkShiftModel() {
  return PhysicalShiftModel{ShiftMechanism::DcStark, 0.1, 0.0, 0.0};
}

PhysicalShiftModel acStarkShiftModel(Real laserDetuningNm) {
  return PhysicalShiftModel{ShiftMechanism::AcStark, 200.0, 10.0, laserDetuningNm};
}

Real shiftFromField(const PhysicalShiftModel& model, Real fieldStrength) {
  if (!std::isfinite(fieldStrength))
    throw ConfigError("field strength must be finite");
  if (!(model.coefficientMHz > 0.0))
    throw ConfigError("shift coefficient must be > 0");
  if (model.mechanism != ShiftMechanism::AcStark)
    return model.coefficientMHz * fieldStrength;
  // Light shift: linear in intensity, inversely proportional to the laser
  // detuning; inverted detuning inverts the shift.
  if (model.laserDetuningNm == 0.0)
    throw ConfigError("ac Stark laser detuning must be nonzero");
  return model.coefficientMHz * fieldStrength *
         (model.referenceDetuningNm / model.laserDetuningNm);
}

}  // namespace crib
