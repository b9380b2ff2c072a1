#include "crib/outputs.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "crib/errors.hpp"

namespace crib {

using json = nlohmann::ordered_json;

std::string solverVersion() { return "crib-sim 1.0.0"; }

namespace {

// Shortest round-trip formatting; identical bytes for identical doubles.
std::string fmt(Real value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

std::string renderTimeSeries(const RunRecord& record, int stride) {
  if (stride < 1) throw ConfigError("output stride must be >= 1", "output.stride");
  std::ostringstream os;
  os << "t,re_ef_z0,im_ef_z0,re_ef_zL,im_ef_zL,re_eb_z0,im_eb_z0,stored\n";
  auto row = [&](int n) {
    os << fmt(record.time(n)) << ',' << fmt(record.forwardAtEntrance[n].real()) << ','
       << fmt(record.forwardAtEntrance[n].imag()) << ','
       << fmt(record.forwardAtExit[n].real()) << ','
       << fmt(record.forwardAtExit[n].imag()) << ','
       << fmt(record.backwardAtEntrance[n].real()) << ','
       << fmt(record.backwardAtEntrance[n].imag()) << ','
       << fmt(record.storedExcitation[n]) << '\n';
  };
  // Rows: n = 0, stride, 2*stride, ..., then always the final step;
  // 1 + ceil(steps / stride) rows in total.
  row(0);
  for (int n = stride; n < record.steps; n += stride) row(n);
  if (record.steps > 0) row(record.steps);
  return os.str();
}

namespace {

json metricsJson(const MetricsReport& metrics) {
  json m = {{"efficiency", metrics.efficiency},
            {"transmission", metrics.transmission},
            {"modeOverlapFidelity", metrics.modeOverlapFidelity},
            {"globalPhase", metrics.globalPhase},
            {"modeOverlapFidelityConjugate", metrics.modeOverlapFidelityConjugate},
            {"globalPhaseConjugate", metrics.globalPhaseConjugate},
            {"echoPeakTime", metrics.echoPeakTime},
            {"energyBalanceResidual", metrics.energyBalanceResidual},
            {"decayedFraction", metrics.decayedFraction},
            {"maxAbsCoherence", metrics.maxAbsCoherence},
            {"weakFieldViolated", metrics.weakFieldViolated}};
  if (metrics.qubit) {
    m["qubit"] = {{"fidelity", metrics.qubit->fidelity},
                  {"leakage", metrics.qubit->leakage}};
  }
  if (metrics.ordering) {
    m["ordering"] = {{"inputPeakTimes", metrics.ordering->inputPeakTimes},
                     {"outputPeakTimes", metrics.ordering->outputPeakTimes},
                     {"strictlyReversed", metrics.ordering->strictlyReversed},
                     {"perPulseEfficiency", metrics.ordering->perPulseEfficiency}};
  }
  return m;
}

}  // namespace

std::string renderMetricsLine(const MetricsReport& metrics, const RunRecord& record,
                              const SimulationConfig& config) {
  json eventLog = json::array();
  for (const auto& entry : record.eventLog)
    eventLog.push_back({{"t", entry.time}, {"kind", entry.kind}, {"detail", entry.detail}});
  json line = {{"version", solverVersion()},
               {"metrics", metricsJson(metrics)},
               {"retrievalTime", record.retrievalTime},
               {"channel", to_string(record.channel)},
               {"warnings", record.warnings},
               {"eventLog", eventLog},
               {"config", json::parse(serializeConfig(config))}};
  return line.dump() + "\n";
}

void writeOutputs(const RunRecord& record, const MetricsReport& metrics,
                  const SimulationConfig& config, const OutputPaths& paths) {
  if (!paths.seriesPath.empty()) {
    std::ofstream out(paths.seriesPath, std::ios::binary);
    if (!out) throw ConfigError("cannot write time-series file '" + paths.seriesPath + "'");
    out << renderTimeSeries(record, config.output.stride);
    if (!out) throw ConfigError("write failed for '" + paths.seriesPath + "'");
  }
  if (!paths.metricsPath.empty()) {
    std::ofstream out(paths.metricsPath, std::ios::binary);
    if (!out) throw ConfigError("cannot write metrics file '" + paths.metricsPath + "'");
    out << renderMetricsLine(metrics, record, config);
    if (!out) throw ConfigError("write failed for '" + paths.metricsPath + "'");
  }
}

}  // namespace crib
