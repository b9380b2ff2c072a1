#pragma once

#include "crib/config.hpp"
#include "crib/oracle.hpp"
#include "crib/run_record.hpp"
#include "crib/types.hpp"

namespace crib {

struct ComparisonReport {
  Real solverEfficiency = 0.0;
  Real oracleEfficiency = 0.0;
  Real efficiencyRelDiff = 0.0;
  Real seriesDistance = 0.0;       // relative L2 on energy-normalized series
  Real solverFidelity = 0.0;       // vs plain mirrored input
  Real oracleFidelity = 0.0;
  Real solverPhase = 0.0;
  Real oraclePhase = 0.0;
  Real fidelityDiff = 0.0;
  Real completeness = 0.0;         // oracle atomic population at t0
  Real solverTransmission = 0.0;
  Real oracleTransmission = 0.0;
};

OracleParams oracleParamsFromConfig(const SimulationConfig& config);

/// Matched solver + oracle runs of the same protocol. Requires a schedule
/// with a single flip(+imprint) retrieval and a Gaussian spectral profile.
/// Throws ConfigError on mismatched configuration.
ComparisonReport compareToSemiclassical(const SimulationConfig& config);

/// Relative L2 distance between two unit-energy-normalized complex series.
Real normalizedSeriesDistance(const VectorXc& a, const VectorXc& b);

}  // namespace crib
