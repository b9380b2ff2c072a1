#pragma once

#include <cmath>

#include "crib/config.hpp"
#include "crib/metrics.hpp"
#include "crib/solver.hpp"

namespace crib::testing {

// Small shared setup for protocol runs: gaussian line, gaussian pulse,
// flip(+imprint) at t0. Everything overridable through the returned config.
inline SimulationConfig echoConfig(Real d, Real gammaInh = 10.0, Real t0 = 15.0,
                                   bool imprint = true) {
  SimulationConfig config;
  config.grid.length = 1.0;
  config.grid.pointCount = 101;
  config.grid.leadIn = 8.0;
  config.grid.leadOut = 2.0;
  config.spectrum.kind = ProfileKind::Gaussian;
  config.spectrum.gammaInh = gammaInh;
  config.spectrum.classCount = 768;
  config.spectrum.supportWidth = 4.0;
  config.medium.opticalDepth = d;
  config.pulse.kind = PulseKind::Gaussian;
  config.pulse.center = 4.0;
  config.pulse.width = 1.0;
  config.pulse.amplitudeScale = 1.0e-3;
  if (t0 > 0.0) {
    config.schedule.events.push_back({EventKind::DetuningFlip, t0});
    if (imprint) config.schedule.events.push_back({EventKind::PhaseImprint, t0});
  }
  config.schedule.tEnd = t0 > 0.0 ? 2.0 * t0 - 4.0 : 24.0;
  return config;
}

inline RunRecord runConfig(const SimulationConfig& config) {
  DetuningProfile profile = buildProfile(config.spectrum);
  auto [grid, spectral] =
      buildGrids(config.grid, profile, spectrumParams(config.spectrum));
  PulseShape shape = buildPulse(config.pulse);
  RunOptions options;
  options.tEnd = resolveEndTime(config);
  return runProtocol(grid, spectral, profile, config.medium, shape, config.schedule,
                     options);
}

inline Real backwardEfficiencyFormula(Real d) {
  return (1.0 - std::exp(-d)) * (1.0 - std::exp(-d));
}

inline Real forwardEfficiencyFormula(Real d) { return d * d * std::exp(-d); }

}  // namespace crib::testing
