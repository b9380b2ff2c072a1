#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crib/grids.hpp"
#include "crib/profile.hpp"
#include "crib/pulse.hpp"
#include "crib/run_record.hpp"
#include "crib/schedule.hpp"
#include "crib/types.hpp"

namespace crib {

struct MediumParams {
  Real opticalDepth = 1.0;            // d: e^{-d} resonant intensity transmission
  Real decayRate = 0.0;               // phenomenological gamma
  std::optional<Real> decoherenceTime;
};

enum class CouplingDirection { Forward, Backward };

/// Full solver state for the linearized Maxwell-Bloch system
///   dt s(z,Delta)          = i Delta s - gamma s + i kappa eps
///   (±dz + dt) eps(z)      = i beta <s>_Delta
/// on characteristics (dt = dz, c = 1), with kappa = beta chosen so a
/// narrow resonant probe is attenuated by e^{-d} in intensity. Exactly one
/// field direction is sourced by the coherence at a time.
struct SolverState {
  SpatialGrid grid;
  SpectralGrid spectral;
  DetuningProfile profile;
  MediumParams medium;

  VectorXc forward;   // field over all domain nodes
  VectorXc backward;
  MatrixXc coherence; // (classes x medium cells)
  MatrixXr detuning;  // current per-(class, cell) detunings
  MatrixXr detuningAsBuilt;  // sign = +1 reference for remove/reestablish
  VectorXr classWeight;      // w_m g_m, sums to 1

  Real kappa = 0.0;   // = beta = sqrt(calibrated kappa*beta)
  Real t = 0.0;
  int stepIndex = 0;
  CouplingDirection coupling = CouplingDirection::Forward;
  Real shelvedUntil = 0.0;
  std::vector<std::string> warnings;

  // Cached elementwise half-step phase, rebuilt after events.
  MatrixXc rotationHalf;
  bool rotationValid = false;

  // Cumulative energy ledgers.
  Real energyInjected = 0.0;
  Real energyTransmitted = 0.0;
  Real energyBackward = 0.0;
  Real energyDecayed = 0.0;
  Real maxAbsCoherence = 0.0;

  Real storedExcitation() const;
  Real fieldEnergy() const;
  /// Spectrally averaged coherence per cell, sum_m w_m g_m s(m, c).
  VectorXc averagedCoherence() const;
};

/// Calibrated kappa*beta product for optical depth d on this profile/grid.
Real calibrateCoupling(const DetuningProfile& profile, const SpectralGrid& spectral,
                       Real opticalDepth, Real mediumLength);

SolverState makeSolverState(const SpatialGrid& grid, const SpectralGrid& spectral,
                            const DetuningProfile& profile, const MediumParams& medium);

/// One characteristics-aligned step. `dt` must equal grid.dt. Second-order
/// symmetric splitting: half detuning rotation, half coupling kick, exact
/// advection, half kick, half rotation. The boundary condition is
/// shape(t_{n+1}) injected at the left domain edge.
void step(SolverState& state, const PulseShape& shape, Real dt);

/// Apply one control event at the current time (within dt/2).
void applyEvent(SolverState& state, const ControlEvent& event);

struct RunOptions {
  Real tEnd = 0.0;          // 0 = derive from schedule and pulse
  bool throwOnScheduleError = true;
};

RunRecord runProtocol(const SpatialGrid& grid, const SpectralGrid& spectral,
                      const DetuningProfile& profile, const MediumParams& medium,
                      const PulseShape& shape, const ControlSchedule& schedule,
                      const RunOptions& options = {});

/// End time covering input transit plus the latest mirrored echo.
Real defaultEndTime(const SpatialGrid& grid, const PulseShape& shape,
                    const ControlSchedule& schedule);

}  // namespace crib
