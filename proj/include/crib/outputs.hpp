#pragma once

#include <string>

#include "crib/config.hpp"
#include "crib/metrics.hpp"
#include "crib/run_record.hpp"

namespace crib {

/// Time-series file: delimited text, header row then one row per sampled
/// step (rows = 1 + ceil(steps / stride), last row is the final step).
/// Column order is fixed; see docs/formats.md.
std::string renderTimeSeries(const RunRecord& record, int stride);

/// One NDJSON metrics record: metrics, resolved config, event log, and
/// solver version metadata.
std::string renderMetricsLine(const MetricsReport& metrics, const RunRecord& record,
                              const SimulationConfig& config);

struct OutputPaths {
  std::string seriesPath;   // empty = skip
  std::string metricsPath;  // empty = skip
};

void writeOutputs(const RunRecord& record, const MetricsReport& metrics,
                  const SimulationConfig& config, const OutputPaths& paths);

std::string solverVersion();

}  // namespace crib
