#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crib/config.hpp"
#include "crib/errors.hpp"
#include "crib/metrics.hpp"
#include "crib/oracle_compare.hpp"
#include "crib/outputs.hpp"
#include "crib/scenarios.hpp"
#include "crib/solver.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace crib;

namespace {

void emitErrorLine(const std::string& kind, const std::string& message, int code) {
  json line = {{"error", {{"kind", kind}, {"message", message}, {"exitCode", code}}}};
  std::cerr << line.dump() << "\n";
}

std::optional<TimeBinParams> timeBinOf(const SimulationConfig& config) {
  if (config.pulse.kind != PulseKind::TimeBinQubit) return std::nullopt;
  TimeBinParams params;
  params.alpha = config.pulse.alpha;
  params.beta = config.pulse.beta;
  params.relativePhase = config.pulse.relativePhase;
  params.binSeparation = config.pulse.binSeparation;
  params.binWidth = config.pulse.width;
  params.center = config.pulse.center;
  return params;
}

struct RunResult {
  RunRecord record;
  MetricsReport metrics;
};

RunResult executeRun(const SimulationConfig& config) {
  DetuningProfile profile = buildProfile(config.spectrum);
  auto [grid, spectral] =
      buildGrids(config.grid, profile, spectrumParams(config.spectrum));
  PulseShape shape = buildPulse(config.pulse);
  RunOptions options;
  options.tEnd = resolveEndTime(config);
  RunResult result;
  result.record = runProtocol(grid, spectral, profile, config.medium, shape,
                              config.schedule, options);
  int trainCount = config.pulse.kind == PulseKind::PulseTrain
                       ? static_cast<int>(config.pulse.pulses.size())
                       : 0;
  result.metrics = computeMetrics(result.record, timeBinOf(config), trainCount);
  return result;
}

OutputPaths resolvePaths(const SimulationConfig& config, const std::string& configPath,
                         const std::string& outDir, const std::string& seriesOverride,
                         const std::string& metricsOverride) {
  OutputPaths paths;
  std::string stem = fs::path(configPath).stem().string();
  fs::path dir = outDir.empty() ? fs::path(".") : fs::path(outDir);
  paths.seriesPath = !seriesOverride.empty() ? seriesOverride
                     : !config.output.seriesPath.empty()
                         ? config.output.seriesPath
                         : (dir / (stem + ".series.csv")).string();
  paths.metricsPath = !metricsOverride.empty() ? metricsOverride
                      : !config.output.metricsPath.empty()
                          ? config.output.metricsPath
                          : (dir / (stem + ".metrics.ndjson")).string();
  if (!outDir.empty()) fs::create_directories(outDir);
  return paths;
}

struct SweepAxis {
  std::string path;
  Real lo = 0.0;
  Real hi = 0.0;
  int count = 0;
};

std::string resolveAlias(const std::string& key) {
  if (key == "d") return "medium.d";
  if (key == "gamma") return "medium.gamma";
  if (key == "gammaInh") return "spectrum.gammaInh";
  if (key == "Nz") return "grid.Nz";
  if (key == "NDelta") return "spectrum.NDelta";
  if (key == "width") return "pulse.width";
  if (key == "amplitudeScale") return "pulse.amplitudeScale";
  return key;
}

SweepAxis parseSweepSpec(const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw UsageError("sweep spec must look like key=lo:hi:count, got '" + spec + "'");
  SweepAxis axis;
  axis.path = resolveAlias(spec.substr(0, eq));
  std::string range = spec.substr(eq + 1);
  auto c1 = range.find(':');
  auto c2 = range.find(':', c1 == std::string::npos ? 0 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw UsageError("sweep range must be lo:hi:count, got '" + range + "'");
  try {
    axis.lo = std::stod(range.substr(0, c1));
    axis.hi = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
    axis.count = std::stoi(range.substr(c2 + 1));
  } catch (const std::exception&) {
    throw UsageError("cannot parse sweep range '" + range + "'");
  }
  if (axis.count < 1) throw UsageError("sweep count must be >= 1");
  return axis;
}

Real axisValue(const SweepAxis& axis, int index) {
  if (axis.count == 1) return axis.lo;
  return axis.lo + (axis.hi - axis.lo) * index / (axis.count - 1);
}

void setJsonPath(json& root, const std::string& path, Real value) {
  json* node = &root;
  std::size_t begin = 0;
  while (true) {
    auto dot = path.find('.', begin);
    std::string key = path.substr(begin, dot - begin);
    if (dot == std::string::npos) {
      // Integer-valued keys keep integer type so validation still passes.
      if ((*node).contains(key) && (*node)[key].is_number_integer())
        (*node)[key] = static_cast<long long>(std::llround(value));
      else
        (*node)[key] = value;
      return;
    }
    if (!node->contains(key)) (*node)[key] = json::object();
    node = &(*node)[key];
    begin = dot + 1;
  }
}

int workerCount(int points, int override_) {
  if (override_ > 0) return std::min(points, override_);
  if (const char* env = std::getenv("CRIB_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return std::min(points, n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return std::min<int>(points, hw > 0 ? static_cast<int>(hw) : 2);
}

int commandRun(const std::string& configPath, const std::string& outDir,
               const std::string& seriesPath, const std::string& metricsPath) {
  SimulationConfig config = loadConfigFile(configPath);
  RunResult result = executeRun(config);
  OutputPaths paths = resolvePaths(config, configPath, outDir, seriesPath, metricsPath);
  writeOutputs(result.record, result.metrics, config, paths);
  for (const auto& warning : result.record.warnings)
    std::cout << "warning: " << warning << "\n";
  std::cout << "run complete: t in [0, " << result.record.tEnd << "], "
            << result.record.steps << " steps\n"
            << "  channel: " << to_string(result.record.channel) << "\n"
            << "  efficiency: " << result.metrics.efficiency << "\n"
            << "  transmission: " << result.metrics.transmission << "\n"
            << "  mode-overlap fidelity: " << result.metrics.modeOverlapFidelity
            << " (phase " << result.metrics.globalPhase << ")\n"
            << "  series: " << paths.seriesPath << "\n"
            << "  metrics: " << paths.metricsPath << "\n";
  return 0;
}

int commandSweep(const std::vector<std::string>& specs, const std::string& configPath,
                 const std::string& outDir, const std::string& metricsPath,
                 int workersOverride) {
  if (specs.empty() || specs.size() > 2)
    throw UsageError("sweep takes one or two key=lo:hi:count specs");
  std::vector<SweepAxis> axes;
  for (const auto& spec : specs) axes.push_back(parseSweepSpec(spec));

  std::ifstream in(configPath, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + configPath + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  SimulationConfig base = parseConfig(text);  // surfaces config errors up front
  json baseJson = json::parse(serializeConfig(base));

  struct Point {
    SimulationConfig config;
    std::vector<std::pair<std::string, Real>> values;
  };
  std::vector<Point> points;
  int outer = axes[0].count;
  int inner = axes.size() == 2 ? axes[1].count : 1;
  for (int i = 0; i < outer; ++i) {
    for (int j = 0; j < inner; ++j) {
      json instance = baseJson;
      Point point;
      Real v0 = axisValue(axes[0], i);
      setJsonPath(instance, axes[0].path, v0);
      point.values.emplace_back(axes[0].path, v0);
      if (axes.size() == 2) {
        Real v1 = axisValue(axes[1], j);
        setJsonPath(instance, axes[1].path, v1);
        point.values.emplace_back(axes[1].path, v1);
      }
      point.config = parseConfig(instance.dump());
      points.push_back(std::move(point));
    }
  }

  std::vector<std::string> lines(points.size());
  std::vector<std::string> seriesTexts(points.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string firstError;
  std::mutex errorMutex;

  auto work = [&] {
    while (true) {
      std::size_t index = next.fetch_add(1);
      if (index >= points.size() || failed.load()) break;
      try {
        RunResult result = executeRun(points[index].config);
        json line = json::parse(
            renderMetricsLine(result.metrics, result.record, points[index].config));
        json sweepInfo = json::object();
        for (const auto& [path, value] : points[index].values) sweepInfo[path] = value;
        line["sweep"] = sweepInfo;
        lines[index] = line.dump() + "\n";
        if (points[index].config.output.writeSweepSeries)
          seriesTexts[index] =
              renderTimeSeries(result.record, points[index].config.output.stride);
      } catch (const std::exception& err) {
        std::lock_guard<std::mutex> lock(errorMutex);
        if (!failed.exchange(true)) firstError = err.what();
      }
    }
  };
  int workers = workerCount(static_cast<int>(points.size()), workersOverride);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& thread : pool) thread.join();
  if (failed.load()) throw NumericalError("sweep point failed: " + firstError);

  std::string stem = fs::path(configPath).stem().string();
  fs::path dir = outDir.empty() ? fs::path(".") : fs::path(outDir);
  if (!outDir.empty()) fs::create_directories(outDir);
  std::string mergedPath =
      !metricsPath.empty() ? metricsPath : (dir / (stem + ".sweep.ndjson")).string();
  std::ofstream out(mergedPath, std::ios::binary);
  if (!out) throw ConfigError("cannot write sweep metrics file '" + mergedPath + "'");
  for (const auto& line : lines) out << line;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (seriesTexts[i].empty()) continue;
    std::string path = (dir / (stem + ".point" + std::to_string(i) + ".series.csv")).string();
    std::ofstream seriesOut(path, std::ios::binary);
    seriesOut << seriesTexts[i];
  }
  std::cout << "sweep complete: " << points.size() << " points -> " << mergedPath << "\n";
  return 0;
}

int commandOracleCompare(const std::string& configPath, const std::string& reportPath) {
  SimulationConfig config = loadConfigFile(configPath);
  ComparisonReport report = compareToSemiclassical(config);
  json out = {{"solverEfficiency", report.solverEfficiency},
              {"oracleEfficiency", report.oracleEfficiency},
              {"efficiencyRelDiff", report.efficiencyRelDiff},
              {"seriesDistance", report.seriesDistance},
              {"solverFidelity", report.solverFidelity},
              {"oracleFidelity", report.oracleFidelity},
              {"solverPhase", report.solverPhase},
              {"oraclePhase", report.oraclePhase},
              {"fidelityDiff", report.fidelityDiff},
              {"completeness", report.completeness},
              {"solverTransmission", report.solverTransmission},
              {"oracleTransmission", report.oracleTransmission}};
  std::string path = reportPath.empty()
                         ? fs::path(configPath).stem().string() + ".oracle.json"
                         : reportPath;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write report file '" + path + "'");
  file << out.dump(2) << "\n";
  std::cout << "oracle comparison:\n"
            << "  efficiency: solver " << report.solverEfficiency << " vs oracle "
            << report.oracleEfficiency << " (rel diff " << report.efficiencyRelDiff
            << ")\n"
            << "  series L2 distance: " << report.seriesDistance << "\n"
            << "  fidelity: solver " << report.solverFidelity << " vs oracle "
            << report.oracleFidelity << "\n"
            << "  completeness at t0: " << report.completeness << "\n"
            << "  report: " << path << "\n";
  return 0;
}

int commandValidate(const std::string& configPath) {
  SimulationConfig config = loadConfigFile(configPath);
  DetuningProfile profile = buildProfile(config.spectrum);
  auto [grid, spectral] =
      buildGrids(config.grid, profile, spectrumParams(config.spectrum));
  PulseShape shape = buildPulse(config.pulse);
  ScheduleContext context;
  context.decoherenceTime = config.medium.decoherenceTime;
  context.leadIn = grid.leadIn();
  context.maxDetuning =
      profile.isGradient() ? std::abs(profile.slope) * grid.length / 2.0
                           : spectral.nodes.cwiseAbs().maxCoeff();
  context.broadeningBound = profile.maxBroadeningBound;
  ValidationReport report = validateSchedule(config.schedule, shape, context);
  for (const auto& check : report.checks) {
    const char* level = check.level == CheckLevel::Pass   ? "pass"
                        : check.level == CheckLevel::Warn ? "WARN"
                                                          : "ERROR";
    std::cout << level << "  " << check.condition << ": " << check.message << "\n";
  }
  std::cout << "config OK: " << resolveEndTime(config) << " time units, "
            << spectral.size() << " detuning classes, dt = " << grid.dt << "\n";
  if (!report.ok()) throw ConfigError("schedule validation failed: " + report.firstError());
  return 0;
}

int commandListScenarios(const std::string& writeDir) {
  for (const auto& scenario : bundledScenarios())
    std::cout << scenario.name << " — " << scenario.description << "\n";
  if (!writeDir.empty()) {
    fs::create_directories(writeDir);
    for (const auto& scenario : bundledScenarios()) {
      std::string path = (fs::path(writeDir) / (scenario.name + ".json")).string();
      std::ofstream out(path, std::ios::binary);
      if (!out) throw ConfigError("cannot write scenario file '" + path + "'");
      out << scenario.config << "\n";
    }
    std::cout << "scenario configs written to " << writeDir << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crib-sim: CRIB photon-echo quantum memory simulator"};
  app.require_subcommand(1);

  std::string configPath, outDir, seriesPath, metricsPath, reportPath, writeDir;
  std::vector<std::string> sweepSpecs;
  int workers = 0;

  auto* run = app.add_subcommand("run", "execute one protocol run");
  run->add_option("config", configPath, "config file")->required();
  run->add_option("--out-dir", outDir, "output directory");
  run->add_option("--series", seriesPath, "time-series output path");
  run->add_option("--metrics", metricsPath, "metrics output path");

  auto* sweep = app.add_subcommand("sweep", "run a declared parameter grid");
  sweep->add_option("spec", sweepSpecs, "key=lo:hi:count (one or two)")
      ->required()
      ->expected(1, 2);
  sweep->add_option("config", configPath, "config file")->required();
  sweep->add_option("--out-dir", outDir, "output directory");
  sweep->add_option("--metrics", metricsPath, "merged metrics output path");
  sweep->add_option("--workers", workers, "worker threads (or CRIB_WORKERS env)");

  auto* oracleCompare =
      app.add_subcommand("oracle-compare", "matched solver + quantum-oracle runs");
  oracleCompare->add_option("config", configPath, "config file")->required();
  oracleCompare->add_option("--report", reportPath, "comparison report path");

  auto* validate = app.add_subcommand("validate", "parse and check a config");
  validate->add_option("config", configPath, "config file")->required();

  auto* list = app.add_subcommand("list-scenarios", "print bundled example configs");
  list->add_option("--write", writeDir, "materialize scenario configs into a directory");

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(run))
      return commandRun(configPath, outDir, seriesPath, metricsPath);
    if (app.got_subcommand(sweep))
      return commandSweep(sweepSpecs, configPath, outDir, metricsPath, workers);
    if (app.got_subcommand(oracleCompare))
      return commandOracleCompare(configPath, reportPath);
    if (app.got_subcommand(validate)) return commandValidate(configPath);
    if (app.got_subcommand(list)) return commandListScenarios(writeDir);
    throw UsageError("no subcommand selected");
  } catch (const CLI::CallForHelp& help) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& err) {
    emitErrorLine("usage", err.what(), 1);
    return 1;
  } catch (const UsageError& err) {
    emitErrorLine("usage", err.what(), 1);
    return 1;
  } catch (const ConfigError& err) {
    emitErrorLine("config", err.what(), 2);
    return 2;
  } catch (const NumericalError& err) {
    emitErrorLine("numerical", err.what(), 3);
    return 3;
  } catch (const std::exception& err) {
    emitErrorLine("internal", err.what(), 3);
    return 3;
  }
}
