#include "crib/oracle_compare.hpp"

#include <cmath>

#include "crib/errors.hpp"
#include "crib/metrics.hpp"

namespace crib {

Real normalizedSeriesDistance(const VectorXc& a, const VectorXc& b) {
  if (a.size() != b.size())
    throw ConfigError("series distance requires equal lengths");
  Real na = a.norm();
  Real nb = b.norm();
  if (na == 0.0 && nb == 0.0) return 0.0;
  if (na == 0.0 || nb == 0.0) return 2.0;
  return (a / na - b / nb).norm();
}

OracleParams oracleParamsFromConfig(const SimulationConfig& config) {
  if (!config.oracle)
    throw ConfigError("oracle-compare needs an oracle config block", "oracle");
  if (config.spectrum.kind != ProfileKind::Gaussian ||
      !config.spectrum.components.empty() || config.spectrum.center != 0.0)
    throw ConfigError(
        "oracle comparison supports a single centered gaussian profile only",
        "spectrum.kind");
  OracleParams params;
  params.atomCount = config.oracle->atomCount;
  params.modeCount = config.oracle->modeCount;
  params.boxLength = config.oracle->boxLength;
  params.k0 = config.oracle->k0;
  params.gammaInh = config.spectrum.gammaInh;
  params.mediumLength = config.grid.length;
  params.effectiveDepth = config.oracle->effectiveDepth.value_or(
      config.medium.opticalDepth);
  if (config.medium.opticalDepth == 0.0) params.coupling = 0.0;
  return params;
}

ComparisonReport compareToSemiclassical(const SimulationConfig& config) {
  if (config.medium.decayRate != 0.0)
    throw ConfigError("oracle comparison requires gamma = 0", "medium.gamma");
  auto t0opt = config.schedule.retrievalTime();
  if (!t0opt || !config.schedule.hasPhaseImprint())
    throw ConfigError("oracle comparison needs a flip + phase-imprint schedule",
                      "schedule.events");

  OracleParams params = oracleParamsFromConfig(config);

  // Matched semiclassical run. The solver's optical depth is pinned to the
  // oracle's effective depth.
  SimulationConfig matched = config;
  matched.medium.opticalDepth =
      params.coupling && *params.coupling == 0.0 ? 0.0 : params.effectiveDepth;
  DetuningProfile profile = buildProfile(matched.spectrum);
  auto [grid, spectral] =
      buildGrids(matched.grid, profile, spectrumParams(matched.spectrum));
  PulseShape shape = buildPulse(matched.pulse);
  RunOptions options;
  options.tEnd = resolveEndTime(matched);
  RunRecord record = runProtocol(grid, spectral, profile, matched.medium, shape,
                                 matched.schedule, options);

  ComparisonReport report;
  report.solverEfficiency = efficiency(record);
  report.solverTransmission = transmission(record);

  // Oracle run of the same protocol.
  OracleSystem system = buildOracle(params);
  OracleState initial = inputPhotonState(system, shape, grid.leadIn());
  Real t0 = record.retrievalTime;
  int n0 = record.sampleIndex(t0);
  int echoCount = record.steps + 1 - n0;

  OracleState atFlip = evolve(initial, system, t0);
  report.completeness = atomicPopulation(system, atFlip);
  report.oracleTransmission = forwardPopulation(system, atFlip);

  ControlledOracle controlled = applyCribControl(atFlip, system);
  VectorXc oracleEcho = envelopeSeries(controlled.system, controlled.state,
                                       Band::Backward, t0, record.dt, echoCount);
  VectorXc oracleInput =
      envelopeSeries(system, initial, Band::Forward, 0.0, record.dt, n0 + 1);

  OracleState atEnd =
      evolve(controlled.state, controlled.system, record.tEnd - t0);
  report.oracleEfficiency = backwardPopulation(controlled.system, atEnd);

  Real scale = std::max(report.solverEfficiency, 1e-12);
  report.efficiencyRelDiff =
      std::abs(report.solverEfficiency - report.oracleEfficiency) / scale;

  VectorXc solverEcho = echoWindowSeries(record);
  report.seriesDistance = normalizedSeriesDistance(solverEcho, oracleEcho);

  if (solverEcho.squaredNorm() > 0.0 && oracleEcho.squaredNorm() > 0.0) {
    auto solverOverlap = echoOverlap(record, false);
    report.solverFidelity = solverOverlap.fidelity;
    report.solverPhase = solverOverlap.phase;

    VectorXc oracleMirror = VectorXc::Zero(echoCount);
    for (int i = 0; i < echoCount && n0 - i >= 0; ++i)
      oracleMirror[i] = oracleInput[n0 - i];
    auto oracleOverlap = modeOverlap(oracleMirror, oracleEcho);
    report.oracleFidelity = oracleOverlap.fidelity;
    report.oraclePhase = oracleOverlap.phase;
    report.fidelityDiff = std::abs(report.solverFidelity - report.oracleFidelity);
  }
  return report;
}

}  // namespace crib
