#pragma once

#include <optional>
#include <vector>

#include "crib/pulse.hpp"
#include "crib/run_record.hpp"
#include "crib/types.hpp"

namespace crib {

struct OverlapResult {
  Real fidelity = 0.0;  // |<ref, out>|^2 / (|ref|^2 |out|^2)
  Real phase = 0.0;     // arg <ref, out>, in (-pi, pi]
};

struct QubitResult {
  Real fidelity = 0.0;  // conditional, on the renormalized bin subspace
  Real leakage = 0.0;   // 1 - captured fraction of the echo energy
  Complex earlyAmplitude{};  // projections onto the mirrored bin modes
  Complex lateAmplitude{};
};

struct OrderingReport {
  std::vector<Real> inputPeakTimes;
  std::vector<Real> outputPeakTimes;
  bool strictlyReversed = false;
  std::vector<Real> perPulseEfficiency;
};

struct MetricsReport {
  Real efficiency = 0.0;
  Real transmission = 0.0;
  Real modeOverlapFidelity = 0.0;
  Real globalPhase = 0.0;
  Real modeOverlapFidelityConjugate = 0.0;  // against the conjugated mirror
  Real globalPhaseConjugate = 0.0;
  Real echoPeakTime = 0.0;
  Real energyBalanceResidual = 0.0;
  Real decayedFraction = 0.0;
  Real maxAbsCoherence = 0.0;
  bool weakFieldViolated = false;
  std::optional<QubitResult> qubit;
  std::optional<OrderingReport> ordering;
};

/// Output energy in the designated echo channel and window divided by the
/// input energy. Throws on zero input energy.
Real efficiency(const RunRecord& record);

/// Intensity transmission: forward energy at z = L over the whole run
/// divided by input energy.
Real transmission(const RunRecord& record);

/// Overlap of `output` against `reference` on a common time grid.
/// Throws when either series has zero energy.
OverlapResult modeOverlap(const VectorXc& reference, const VectorXc& output);

/// Time-mirrored input about t0, sampled on the echo window of `record`:
/// reference(t) = eps_in(2 t0 - t). Conjugate = true mirrors the conjugated
/// input instead (which reference is "the" replay is profile-dependent, so
/// both are evaluated).
VectorXc mirroredInputReference(const RunRecord& record, bool conjugate = false);
VectorXc echoWindowSeries(const RunRecord& record);

OverlapResult echoOverlap(const RunRecord& record, bool conjugate = false);

/// Conditional time-bin qubit fidelity against the mirrored input state.
/// Throws when the mirrored bin windows are unresolvable.
QubitResult timebinFidelity(const RunRecord& record, const TimeBinParams& params);

/// Detected output peak times (quadratic interpolation around |eps|^2
/// maxima) checked for strict reversal of the input ordering.
/// Throws when peaks are unresolvable.
OrderingReport orderingCheck(const RunRecord& record, int expectedPulseCount);

/// Max-over-time energy ledger residual relative to total input (gamma = 0).
Real energyBalance(const RunRecord& record);

/// Sub-sample peak location of |series|^2 via quadratic interpolation.
Real peakTime(const VectorXc& series, Real dt, int begin = 0, int end = -1);

MetricsReport computeMetrics(const RunRecord& record,
                             const std::optional<TimeBinParams>& timeBin = {},
                             int trainPulseCount = 0);

}  // namespace crib
