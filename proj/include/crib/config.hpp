#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crib/grids.hpp"
#include "crib/profile.hpp"
#include "crib/pulse.hpp"
#include "crib/schedule.hpp"
#include "crib/solver.hpp"
#include "crib/types.hpp"

namespace crib {

struct SpectrumConfig {
  ProfileKind kind = ProfileKind::Gaussian;
  Real gammaInh = 1.0;  // width parameter for spectral kinds
  Real slope = 0.0;     // linearGradient
  Real center = 0.0;
  int sign = +1;
  int classCount = 1;   // N_Delta
  QuadratureKind quadrature = QuadratureKind::GaussLegendre;
  Real supportWidth = 0.0;  // 0 = kind default
  std::vector<ProfileComponent> components;  // optional multi-line profile
  Real hyperfineBound = 0.0;                 // 0 = unset
};

struct PulseConfig {
  PulseKind kind = PulseKind::Gaussian;
  Real center = 4.0;
  Real width = 1.0;
  Real carrierOffset = 0.0;
  Real amplitudeScale = 1.0e-3;
  bool normalize = true;
  // timeBinQubit
  Real alpha = 1.0;
  Real beta = 0.0;
  Real relativePhase = 0.0;
  Real binSeparation = 4.0;
  // pulseTrain
  std::vector<PulseEnvelope> pulses;
};

struct OutputConfig {
  std::string seriesPath;
  std::string metricsPath;
  int stride = 1;
  bool writeSweepSeries = false;
};

struct OracleConfig {
  int atomCount = 20;
  int modeCount = 128;
  Real boxLength = 40.0;
  Real k0 = 2.0 * kPi;
  std::optional<Real> effectiveDepth;  // default: medium d
  std::optional<Real> tEnd;
};

struct SimulationConfig {
  GridParams grid;
  SpectrumConfig spectrum;
  MediumParams medium;
  PulseConfig pulse;
  ControlSchedule schedule;
  OutputConfig output;
  std::optional<OracleConfig> oracle;
};

/// Parse and validate a JSON config. Throws ConfigError with the offending
/// path (constraint violations, unknown keys) or line/column (syntax).
SimulationConfig parseConfig(const std::string& text);
SimulationConfig loadConfigFile(const std::string& path);

/// Canonical serialization with all defaults resolved; parse of the result
/// is a fixed point.
std::string serializeConfig(const SimulationConfig& config);

DetuningProfile buildProfile(const SpectrumConfig& spectrum);
SpectrumParams spectrumParams(const SpectrumConfig& spectrum);
PulseShape buildPulse(const PulseConfig& pulse);

/// End time of the run: explicit schedule.tEnd, or derived so the latest
/// echo (mirrored about the last rephasing event) has fully left the medium.
Real resolveEndTime(const SimulationConfig& config);

}  // namespace crib
