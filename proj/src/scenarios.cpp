#include "crib/scenarios.hpp"

namespace crib {

namespace {

const char* kBasicEcho = R"({
  "grid": {"L": 1.0, "Nz": 101, "leadIn": 8.0, "leadOut": 2.0},
  "spectrum": {"kind": "gaussian", "gammaInh": 10.0, "NDelta": 768},
  "medium": {"d": 5.0},
  "pulse": {"kind": "gaussian", "center": 4.0, "width": 1.0, "amplitudeScale": 0.001},
  "schedule": {
    "events": [
      {"kind": "detuningFlip", "t": 15.0},
      {"kind": "phaseImprint", "t": 15.0}
    ],
    "tEnd": 24.0
  },
  "output": {"stride": 5}
})";

const char* kForwardRetrieval = R"({
  "grid": {"L": 0.25, "Nz": 26, "leadIn": 6.0, "leadOut": 1.0},
  "spectrum": {"kind": "gaussian", "gammaInh": 10.0, "NDelta": 768, "supportWidth": 4.0},
  "medium": {"d": 2.0},
  "pulse": {"kind": "gaussian", "center": 4.5, "width": 1.5, "amplitudeScale": 0.001},
  "schedule": {
    "events": [
      {"kind": "detuningFlip", "t": 15.0}
    ],
    "tEnd": 28.0
  },
  "output": {"stride": 5}
})";

const char* kTimeBinQubit = R"({
  "grid": {"L": 1.0, "Nz": 101, "leadIn": 8.0, "leadOut": 2.0},
  "spectrum": {"kind": "gaussian", "gammaInh": 10.0, "NDelta": 768, "supportWidth": 4.0},
  "medium": {"d": 20.0},
  "pulse": {"kind": "timeBinQubit", "center": 4.5, "width": 0.6,
            "alpha": 0.7071067811865476, "beta": 0.7071067811865476,
            "relativePhase": 1.5707963267948966, "binSeparation": 4.0,
            "amplitudeScale": 0.001},
  "schedule": {
    "events": [
      {"kind": "detuningFlip", "t": 18.0},
      {"kind": "phaseImprint", "t": 18.0}
    ],
    "tEnd": 30.0
  },
  "output": {"stride": 5}
})";

const char* kThreePulseTrain = R"({
  "grid": {"L": 1.0, "Nz": 101, "leadIn": 1.0, "leadOut": 2.0},
  "spectrum": {"kind": "gaussian", "gammaInh": 10.0, "NDelta": 768, "supportWidth": 4.0},
  "medium": {"d": 20.0},
  "pulse": {"kind": "pulseTrain", "amplitudeScale": 0.001, "pulses": [
    {"center": 2.0, "width": 0.45, "amplitude": 1.0},
    {"center": 5.0, "width": 0.45, "amplitude": 1.0},
    {"center": 9.0, "width": 0.45, "amplitude": 1.0}
  ]},
  "schedule": {
    "events": [
      {"kind": "detuningFlip", "t": 13.0},
      {"kind": "phaseImprint", "t": 13.0}
    ],
    "tEnd": 27.0
  },
  "output": {"stride": 5}
})";

const char* kTwoLineMultiplexing = R"({
  "grid": {"L": 1.0, "Nz": 201, "leadIn": 1.0, "leadOut": 1.0},
  "spectrum": {"kind": "gaussian", "NDelta": 576, "supportWidth": 4.0, "components": [
    {"kind": "gaussian", "width": 3.0, "center": -15.0, "weight": 1.0},
    {"kind": "gaussian", "width": 3.0, "center": 15.0, "weight": 1.0}
  ]},
  "medium": {"d": 10.0},
  "pulse": {"kind": "pulseTrain", "amplitudeScale": 0.001, "pulses": [
    {"center": 3.0, "width": 1.0, "amplitude": 1.0, "carrierOffset": -15.0},
    {"center": 6.5, "width": 1.0, "amplitude": 1.0, "carrierOffset": 15.0}
  ]},
  "schedule": {
    "events": [
      {"kind": "phaseImprint", "t": 10.0},
      {"kind": "bandRephase", "t": 10.0, "lo": -27.0, "hi": -3.0},
      {"kind": "bandRephase", "t": 19.0, "lo": 3.0, "hi": 27.0}
    ],
    "tEnd": 36.0
  },
  "output": {"stride": 5}
})";

const char* kShelvingDelay = R"({
  "grid": {"L": 1.0, "Nz": 101, "leadIn": 8.0, "leadOut": 2.0},
  "spectrum": {"kind": "gaussian", "gammaInh": 10.0, "NDelta": 768, "supportWidth": 4.0},
  "medium": {"d": 5.0},
  "pulse": {"kind": "gaussian", "center": 4.0, "width": 1.0, "amplitudeScale": 0.001},
  "schedule": {
    "events": [
      {"kind": "detuningFlip", "t": 15.0},
      {"kind": "phaseImprint", "t": 15.0},
      {"kind": "shelvePause", "t": 15.0, "duration": 3.0}
    ],
    "tEnd": 27.0
  },
  "output": {"stride": 5}
})";

const std::vector<Scenario> kScenarios = {
    {"basic-echo",
     "store a gaussian pulse at d = 5 and retrieve it backward (flip + imprint)",
     kBasicEcho},
    {"forward-retrieval",
     "flip without the phase imprint: lower-efficiency forward echo at d = 2",
     kForwardRetrieval},
    {"time-bin-qubit",
     "store and recall an equal-superposition time-bin qubit at d = 20",
     kTimeBinQubit},
    {"three-pulse-train",
     "three pulses stored and recalled in inverse order at d = 20",
     kThreePulseTrain},
    {"two-line-multiplexing",
     "two spectral lines, band-selective rephasing retrieves each pulse on demand",
     kTwoLineMultiplexing},
    {"shelving-delay",
     "shelving pause between flip and retrieval delays the echo by its duration",
     kShelvingDelay},
};

}  // namespace

const std::vector<Scenario>& bundledScenarios() { return kScenarios; }

const Scenario* findScenario(const std::string& name) {
  for (const auto& scenario : kScenarios)
    if (scenario.name == name) return &scenario;
  return nullptr;
}

}  // namespace crib
