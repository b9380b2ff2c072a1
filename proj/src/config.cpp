#include "crib/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "crib/errors.hpp"

namespace crib {

using json = nlohmann::ordered_json;

namespace {

struct Collector {
  std::vector<std::string> problems;
  void add(const std::string& path, const std::string& message) {
    problems.push_back(path + ": " + message);
  }
  void finish() const {
    if (problems.empty()) return;
    std::string joined;
    for (const auto& p : problems) {
      if (!joined.empty()) joined += "; ";
      joined += p;
    }
    throw ConfigError(joined, problems.front().substr(0, problems.front().find(':')));
  }
};

void rejectUnknownKeys(const json& node, const std::set<std::string>& known,
                       const std::string& path) {
  if (!node.is_object()) return;
  for (const auto& [key, value] : node.items()) {
    if (!known.count(key))
      throw ConfigError("unknown key '" + path + key + "'", path + key);
  }
}

Real asNumber(const json& node, const std::string& path) {
  if (!node.is_number()) throw ConfigError("expected a number", path);
  return node.get<Real>();
}

int asInt(const json& node, const std::string& path) {
  if (!node.is_number_integer()) throw ConfigError("expected an integer", path);
  return node.get<int>();
}

bool asBool(const json& node, const std::string& path) {
  if (!node.is_boolean()) throw ConfigError("expected a boolean", path);
  return node.get<bool>();
}

std::string asString(const json& node, const std::string& path) {
  if (!node.is_string()) throw ConfigError("expected a string", path);
  return node.get<std::string>();
}

Complex asComplex(const json& node, const std::string& path) {
  if (node.is_number()) return Complex{node.get<Real>(), 0.0};
  if (node.is_array() && node.size() == 2 && node[0].is_number() && node[1].is_number())
    return Complex{node[0].get<Real>(), node[1].get<Real>()};
  throw ConfigError("expected a number or [re, im] pair", path);
}

void parseGrid(const json& node, GridParams& grid, Collector& errors) {
  rejectUnknownKeys(node, {"L", "Nz", "leadIn", "leadOut"}, "grid.");
  if (node.contains("L")) grid.length = asNumber(node["L"], "grid.L");
  if (node.contains("Nz")) grid.pointCount = asInt(node["Nz"], "grid.Nz");
  if (node.contains("leadIn")) grid.leadIn = asNumber(node["leadIn"], "grid.leadIn");
  if (node.contains("leadOut")) grid.leadOut = asNumber(node["leadOut"], "grid.leadOut");
  if (!(grid.length > 0.0)) errors.add("grid.L", "must be > 0");
  if (grid.pointCount < 2) errors.add("grid.Nz", "must be >= 2");
  if (grid.leadIn < 0.0) errors.add("grid.leadIn", "must be >= 0");
  if (grid.leadOut < 0.0) errors.add("grid.leadOut", "must be >= 0");
}

void parseSpectrum(const json& node, SpectrumConfig& spectrum, Collector& errors) {
  rejectUnknownKeys(node,
                    {"kind", "gammaInh", "slope", "center", "sign", "NDelta",
                     "quadrature", "supportWidth", "components", "hyperfineBound"},
                    "spectrum.");
  if (node.contains("kind"))
    spectrum.kind = profileKindFromString(asString(node["kind"], "spectrum.kind"));
  if (node.contains("gammaInh"))
    spectrum.gammaInh = asNumber(node["gammaInh"], "spectrum.gammaInh");
  if (node.contains("slope")) spectrum.slope = asNumber(node["slope"], "spectrum.slope");
  if (node.contains("center")) spectrum.center = asNumber(node["center"], "spectrum.center");
  if (node.contains("sign")) spectrum.sign = asInt(node["sign"], "spectrum.sign");
  if (node.contains("NDelta")) spectrum.classCount = asInt(node["NDelta"], "spectrum.NDelta");
  if (node.contains("quadrature"))
    spectrum.quadrature =
        quadratureKindFromString(asString(node["quadrature"], "spectrum.quadrature"));
  if (node.contains("supportWidth"))
    spectrum.supportWidth = asNumber(node["supportWidth"], "spectrum.supportWidth");
  if (node.contains("hyperfineBound"))
    spectrum.hyperfineBound = asNumber(node["hyperfineBound"], "spectrum.hyperfineBound");
  if (node.contains("components")) {
    const json& list = node["components"];
    if (!list.is_array()) {
      errors.add("spectrum.components", "expected an array");
    } else {
      for (std::size_t i = 0; i < list.size(); ++i) {
        std::string path = "spectrum.components[" + std::to_string(i) + "]";
        rejectUnknownKeys(list[i], {"kind", "width", "center", "weight"}, path + ".");
        ProfileComponent comp;
        if (list[i].contains("kind"))
          comp.kind = profileKindFromString(asString(list[i]["kind"], path + ".kind"));
        else
          comp.kind = spectrum.kind;
        if (list[i].contains("width")) comp.width = asNumber(list[i]["width"], path + ".width");
        if (list[i].contains("center"))
          comp.center = asNumber(list[i]["center"], path + ".center");
        if (list[i].contains("weight"))
          comp.weight = asNumber(list[i]["weight"], path + ".weight");
        if (!(comp.width > 0.0)) errors.add(path + ".width", "must be > 0");
        if (!(comp.weight > 0.0)) errors.add(path + ".weight", "must be > 0");
        spectrum.components.push_back(comp);
      }
    }
  }
  if (spectrum.kind == ProfileKind::LinearGradient) {
    if (!(spectrum.slope > 0.0)) errors.add("spectrum.slope", "must be > 0");
  } else if (spectrum.components.empty() && !(spectrum.gammaInh > 0.0)) {
    errors.add("spectrum.gammaInh", "must be > 0");
  }
  if (spectrum.sign != +1 && spectrum.sign != -1)
    errors.add("spectrum.sign", "must be +1 or -1");
  if (spectrum.classCount < 1) errors.add("spectrum.NDelta", "must be >= 1");
  if (spectrum.supportWidth < 0.0) errors.add("spectrum.supportWidth", "must be >= 0");
}

void parseMedium(const json& node, MediumParams& medium, Collector& errors) {
  rejectUnknownKeys(node, {"d", "gamma", "tDecoh"}, "medium.");
  if (node.contains("d")) medium.opticalDepth = asNumber(node["d"], "medium.d");
  if (node.contains("gamma")) medium.decayRate = asNumber(node["gamma"], "medium.gamma");
  if (node.contains("tDecoh") && !node["tDecoh"].is_null())
    medium.decoherenceTime = asNumber(node["tDecoh"], "medium.tDecoh");
  if (medium.opticalDepth < 0.0) errors.add("medium.d", "must be >= 0");
  if (medium.decayRate < 0.0) errors.add("medium.gamma", "must be >= 0");
  if (medium.decoherenceTime && !(*medium.decoherenceTime > 0.0))
    errors.add("medium.tDecoh", "must be > 0");
}

void parsePulse(const json& node, PulseConfig& pulse, Collector& errors) {
  rejectUnknownKeys(node,
                    {"kind", "center", "width", "carrierOffset", "amplitudeScale",
                     "normalize", "alpha", "beta", "relativePhase", "binSeparation",
                     "pulses"},
                    "pulse.");
  if (node.contains("kind"))
    pulse.kind = pulseKindFromString(asString(node["kind"], "pulse.kind"));
  if (node.contains("center")) pulse.center = asNumber(node["center"], "pulse.center");
  if (node.contains("width")) pulse.width = asNumber(node["width"], "pulse.width");
  if (node.contains("carrierOffset"))
    pulse.carrierOffset = asNumber(node["carrierOffset"], "pulse.carrierOffset");
  if (node.contains("amplitudeScale"))
    pulse.amplitudeScale = asNumber(node["amplitudeScale"], "pulse.amplitudeScale");
  if (node.contains("normalize")) pulse.normalize = asBool(node["normalize"], "pulse.normalize");
  if (node.contains("alpha")) pulse.alpha = asNumber(node["alpha"], "pulse.alpha");
  if (node.contains("beta")) pulse.beta = asNumber(node["beta"], "pulse.beta");
  if (node.contains("relativePhase"))
    pulse.relativePhase = asNumber(node["relativePhase"], "pulse.relativePhase");
  if (node.contains("binSeparation"))
    pulse.binSeparation = asNumber(node["binSeparation"], "pulse.binSeparation");
  if (node.contains("pulses")) {
    const json& list = node["pulses"];
    if (!list.is_array()) {
      errors.add("pulse.pulses", "expected an array");
    } else {
      for (std::size_t i = 0; i < list.size(); ++i) {
        std::string path = "pulse.pulses[" + std::to_string(i) + "]";
        rejectUnknownKeys(list[i], {"center", "width", "amplitude", "carrierOffset"},
                          path + ".");
        PulseEnvelope env;
        env.kind = PulseKind::Gaussian;
        if (list[i].contains("center")) env.center = asNumber(list[i]["center"], path + ".center");
        if (list[i].contains("width")) env.width = asNumber(list[i]["width"], path + ".width");
        if (list[i].contains("amplitude"))
          env.amplitude = asComplex(list[i]["amplitude"], path + ".amplitude");
        if (list[i].contains("carrierOffset"))
          env.carrierOffset = asNumber(list[i]["carrierOffset"], path + ".carrierOffset");
        if (!(env.width > 0.0)) errors.add(path + ".width", "must be > 0");
        pulse.pulses.push_back(env);
      }
    }
  }
  if (!(pulse.width > 0.0)) errors.add("pulse.width", "must be > 0");
  if (!(pulse.amplitudeScale > 0.0)) errors.add("pulse.amplitudeScale", "must be > 0");
  if (pulse.kind == PulseKind::TimeBinQubit &&
      pulse.binSeparation < 4.0 * pulse.width)
    errors.add("pulse.binSeparation", "must be >= 4x bin width");
  if (pulse.kind == PulseKind::PulseTrain && pulse.pulses.empty())
    errors.add("pulse.pulses", "pulse train needs at least one pulse");
}

void parseSchedule(const json& node, ControlSchedule& schedule, Collector& errors) {
  rejectUnknownKeys(node, {"events", "switchingDuration", "tEnd"}, "schedule.");
  if (node.contains("switchingDuration"))
    schedule.switchingDuration =
        asNumber(node["switchingDuration"], "schedule.switchingDuration");
  if (node.contains("tEnd") && !node["tEnd"].is_null())
    schedule.tEnd = asNumber(node["tEnd"], "schedule.tEnd");
  if (schedule.switchingDuration < 0.0)
    errors.add("schedule.switchingDuration", "must be >= 0");
  if (schedule.tEnd && !(*schedule.tEnd > 0.0)) errors.add("schedule.tEnd", "must be > 0");
  if (!node.contains("events")) return;
  const json& list = node["events"];
  if (!list.is_array()) {
    errors.add("schedule.events", "expected an array");
    return;
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string path = "schedule.events[" + std::to_string(i) + "]";
    rejectUnknownKeys(list[i], {"kind", "t", "duration", "lo", "hi", "sign"}, path + ".");
    ControlEvent event;
    if (!list[i].contains("kind")) {
      errors.add(path + ".kind", "required");
      continue;
    }
    event.kind = eventKindFromString(asString(list[i]["kind"], path + ".kind"));
    if (list[i].contains("t")) event.time = asNumber(list[i]["t"], path + ".t");
    if (list[i].contains("duration"))
      event.duration = asNumber(list[i]["duration"], path + ".duration");
    if (list[i].contains("lo")) event.bandLo = asNumber(list[i]["lo"], path + ".lo");
    if (list[i].contains("hi")) event.bandHi = asNumber(list[i]["hi"], path + ".hi");
    if (list[i].contains("sign")) event.sign = asInt(list[i]["sign"], path + ".sign");
    if (event.time < 0.0) errors.add(path + ".t", "must be >= 0");
    if (event.kind == EventKind::ShelvePause && !(event.duration > 0.0))
      errors.add(path + ".duration", "must be > 0");
    if (event.kind == EventKind::BandRephase && !(event.bandLo < event.bandHi))
      errors.add(path, "band requires lo < hi");
    if (event.kind == EventKind::ReestablishBroadening && event.sign != 1 &&
        event.sign != -1)
      errors.add(path + ".sign", "must be +1 or -1");
    schedule.events.push_back(event);
  }
}

void parseOutput(const json& node, OutputConfig& output, Collector& errors) {
  rejectUnknownKeys(node, {"seriesPath", "metricsPath", "stride", "writeSweepSeries"},
                    "output.");
  if (node.contains("seriesPath"))
    output.seriesPath = asString(node["seriesPath"], "output.seriesPath");
  if (node.contains("metricsPath"))
    output.metricsPath = asString(node["metricsPath"], "output.metricsPath");
  if (node.contains("stride")) output.stride = asInt(node["stride"], "output.stride");
  if (node.contains("writeSweepSeries"))
    output.writeSweepSeries = asBool(node["writeSweepSeries"], "output.writeSweepSeries");
  if (output.stride < 1) errors.add("output.stride", "must be >= 1");
}

void parseOracle(const json& node, OracleConfig& oracle, Collector& errors) {
  rejectUnknownKeys(node, {"N", "M", "LBox", "k0", "dEff", "tEnd"}, "oracle.");
  if (node.contains("N")) oracle.atomCount = asInt(node["N"], "oracle.N");
  if (node.contains("M")) oracle.modeCount = asInt(node["M"], "oracle.M");
  if (node.contains("LBox")) oracle.boxLength = asNumber(node["LBox"], "oracle.LBox");
  if (node.contains("k0")) oracle.k0 = asNumber(node["k0"], "oracle.k0");
  if (node.contains("dEff") && !node["dEff"].is_null())
    oracle.effectiveDepth = asNumber(node["dEff"], "oracle.dEff");
  if (node.contains("tEnd") && !node["tEnd"].is_null())
    oracle.tEnd = asNumber(node["tEnd"], "oracle.tEnd");
  if (oracle.atomCount < 1) errors.add("oracle.N", "must be >= 1");
  if (oracle.modeCount < 2 || oracle.modeCount % 2 != 0)
    errors.add("oracle.M", "must be even and >= 2");
  if (!(oracle.boxLength > 0.0)) errors.add("oracle.LBox", "must be > 0");
  if (!(oracle.k0 > 0.0)) errors.add("oracle.k0", "must be > 0");
  if (oracle.effectiveDepth && !(*oracle.effectiveDepth > 0.0))
    errors.add("oracle.dEff", "must be > 0");
}

}  // namespace

SimulationConfig parseConfig(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    // Translate the byte offset into line/column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < err.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "syntax error at line " << line << ", column " << col << ": " << err.what();
    throw ConfigError(os.str());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");
  rejectUnknownKeys(root, {"grid", "spectrum", "medium", "pulse", "schedule", "output",
                           "oracle"},
                    "");

  SimulationConfig config;
  Collector errors;
  if (root.contains("grid")) parseGrid(root["grid"], config.grid, errors);
  if (root.contains("spectrum")) parseSpectrum(root["spectrum"], config.spectrum, errors);
  if (root.contains("medium")) parseMedium(root["medium"], config.medium, errors);
  if (root.contains("pulse")) parsePulse(root["pulse"], config.pulse, errors);
  if (root.contains("schedule")) parseSchedule(root["schedule"], config.schedule, errors);
  if (root.contains("output")) parseOutput(root["output"], config.output, errors);
  if (root.contains("oracle")) {
    OracleConfig oracle;
    parseOracle(root["oracle"], oracle, errors);
    config.oracle = oracle;
  }
  errors.finish();

  // Surface builder-level constraint violations (profile/pulse invariants).
  buildProfile(config.spectrum);
  buildPulse(config.pulse);
  return config;
}

SimulationConfig loadConfigFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseConfig(buffer.str());
}

std::string serializeConfig(const SimulationConfig& config) {
  json root;
  root["grid"] = {{"L", config.grid.length},
                  {"Nz", config.grid.pointCount},
                  {"leadIn", config.grid.leadIn},
                  {"leadOut", config.grid.leadOut}};
  json spectrum = {{"kind", to_string(config.spectrum.kind)},
                   {"gammaInh", config.spectrum.gammaInh},
                   {"slope", config.spectrum.slope},
                   {"center", config.spectrum.center},
                   {"sign", config.spectrum.sign},
                   {"NDelta", config.spectrum.classCount},
                   {"quadrature", to_string(config.spectrum.quadrature)},
                   {"supportWidth", config.spectrum.supportWidth},
                   {"hyperfineBound", config.spectrum.hyperfineBound}};
  if (!config.spectrum.components.empty()) {
    json list = json::array();
    for (const auto& comp : config.spectrum.components)
      list.push_back({{"kind", to_string(comp.kind)},
                      {"width", comp.width},
                      {"center", comp.center},
                      {"weight", comp.weight}});
    spectrum["components"] = list;
  }
  root["spectrum"] = spectrum;
  json medium = {{"d", config.medium.opticalDepth}, {"gamma", config.medium.decayRate}};
  medium["tDecoh"] =
      config.medium.decoherenceTime ? json(*config.medium.decoherenceTime) : json(nullptr);
  root["medium"] = medium;

  json pulse = {{"kind", to_string(config.pulse.kind)},
                {"center", config.pulse.center},
                {"width", config.pulse.width},
                {"carrierOffset", config.pulse.carrierOffset},
                {"amplitudeScale", config.pulse.amplitudeScale},
                {"normalize", config.pulse.normalize},
                {"alpha", config.pulse.alpha},
                {"beta", config.pulse.beta},
                {"relativePhase", config.pulse.relativePhase},
                {"binSeparation", config.pulse.binSeparation}};
  if (!config.pulse.pulses.empty()) {
    json list = json::array();
    for (const auto& env : config.pulse.pulses)
      list.push_back({{"center", env.center},
                      {"width", env.width},
                      {"amplitude", {env.amplitude.real(), env.amplitude.imag()}},
                      {"carrierOffset", env.carrierOffset}});
    pulse["pulses"] = list;
  }
  root["pulse"] = pulse;

  json events = json::array();
  for (const auto& event : config.schedule.events) {
    json e = {{"kind", to_string(event.kind)}, {"t", event.time}};
    if (event.kind == EventKind::ShelvePause) e["duration"] = event.duration;
    if (event.kind == EventKind::BandRephase) {
      e["lo"] = event.bandLo;
      e["hi"] = event.bandHi;
    }
    if (event.kind == EventKind::ReestablishBroadening) e["sign"] = event.sign;
    events.push_back(e);
  }
  json schedule = {{"events", events},
                   {"switchingDuration", config.schedule.switchingDuration}};
  schedule["tEnd"] = config.schedule.tEnd ? json(*config.schedule.tEnd) : json(nullptr);
  root["schedule"] = schedule;

  root["output"] = {{"seriesPath", config.output.seriesPath},
                    {"metricsPath", config.output.metricsPath},
                    {"stride", config.output.stride},
                    {"writeSweepSeries", config.output.writeSweepSeries}};
  if (config.oracle) {
    json oracle = {{"N", config.oracle->atomCount},
                   {"M", config.oracle->modeCount},
                   {"LBox", config.oracle->boxLength},
                   {"k0", config.oracle->k0}};
    oracle["dEff"] =
        config.oracle->effectiveDepth ? json(*config.oracle->effectiveDepth) : json(nullptr);
    oracle["tEnd"] = config.oracle->tEnd ? json(*config.oracle->tEnd) : json(nullptr);
    root["oracle"] = oracle;
  }
  return root.dump(2) + "\n";
}

DetuningProfile buildProfile(const SpectrumConfig& spectrum) {
  DetuningProfile profile;
  if (spectrum.kind == ProfileKind::LinearGradient) {
    profile = makeProfile(ProfileKind::LinearGradient, spectrum.slope, spectrum.sign);
  } else if (!spectrum.components.empty()) {
    profile = makeProfile(spectrum.components, spectrum.sign);
  } else {
    profile = makeProfile(spectrum.kind, spectrum.gammaInh, spectrum.sign);
    profile.components.front().center = spectrum.center;
  }
  profile.maxBroadeningBound = spectrum.hyperfineBound;
  return profile;
}

SpectrumParams spectrumParams(const SpectrumConfig& spectrum) {
  SpectrumParams params;
  params.classCount = spectrum.classCount;
  params.quadrature = spectrum.quadrature;
  params.supportWidth = spectrum.supportWidth;
  return params;
}

PulseShape buildPulse(const PulseConfig& pulse) {
  PulseShape shape = [&] {
    switch (pulse.kind) {
      case PulseKind::Gaussian:
        return PulseShape::gaussian(pulse.center, pulse.width, pulse.carrierOffset);
      case PulseKind::Sech:
        return PulseShape::sech(pulse.center, pulse.width, pulse.carrierOffset);
      case PulseKind::TimeBinQubit: {
        TimeBinParams params;
        params.alpha = pulse.alpha;
        params.beta = pulse.beta;
        params.relativePhase = pulse.relativePhase;
        params.binSeparation = pulse.binSeparation;
        params.binWidth = pulse.width;
        params.center = pulse.center;
        return PulseShape::timeBinQubit(params);
      }
      case PulseKind::PulseTrain:
        return PulseShape::train(pulse.pulses);
    }
    throw ConfigError("unhandled pulse kind", "pulse.kind");
  }();
  shape.setAmplitudeScale(pulse.amplitudeScale);
  shape.setNormalized(pulse.normalize);
  return shape;
}

Real resolveEndTime(const SimulationConfig& config) {
  if (config.schedule.tEnd) return *config.schedule.tEnd;
  SpatialGrid grid = buildSpatialGrid(config.grid);
  PulseShape shape = buildPulse(config.pulse);
  return defaultEndTime(grid, shape, config.schedule);
}

}  // namespace crib
