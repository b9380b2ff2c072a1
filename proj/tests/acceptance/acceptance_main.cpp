// Acceptance suite: runs every acceptance criterion end to end and prints
// one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "crib/config.hpp"
#include "crib/metrics.hpp"
#include "crib/oracle.hpp"
#include "crib/oracle_compare.hpp"
#include "crib/outputs.hpp"
#include "crib/scenarios.hpp"
#include "crib/shift_model.hpp"
#include "crib/solver.hpp"

using namespace crib;

namespace {

struct Criterion {
  int id;
  std::string name;
  std::function<void(std::ostringstream&, bool&)> run;
  Real runtimeCap;  // seconds
};

SimulationConfig echoConfig(Real d, Real t0 = 15.0, bool imprint = true) {
  SimulationConfig config;
  config.grid.pointCount = 101;
  config.spectrum.gammaInh = 10.0;
  config.spectrum.classCount = 768;
  config.spectrum.supportWidth = 4.0;
  config.medium.opticalDepth = d;
  config.pulse.center = 4.0;
  config.pulse.width = 1.0;
  config.pulse.amplitudeScale = 1.0e-3;
  if (t0 > 0.0) {
    config.schedule.events.push_back({EventKind::DetuningFlip, t0});
    if (imprint) config.schedule.events.push_back({EventKind::PhaseImprint, t0});
  }
  config.schedule.tEnd = 24.0;
  return config;
}

RunRecord execute(const SimulationConfig& config) {
  DetuningProfile profile = buildProfile(config.spectrum);
  auto [grid, spectral] =
      buildGrids(config.grid, profile, spectrumParams(config.spectrum));
  PulseShape shape = buildPulse(config.pulse);
  RunOptions options;
  options.tEnd = resolveEndTime(config);
  return runProtocol(grid, spectral, profile, config.medium, shape, config.schedule,
                     options);
}

Real backwardFormula(Real d) { return (1.0 - std::exp(-d)) * (1.0 - std::exp(-d)); }
Real forwardFormula(Real d) { return d * d * std::exp(-d); }

void check(bool condition, bool& pass) {
  if (!condition) pass = false;
}

// --- criterion implementations -------------------------------------------

void vacuumTransport(std::ostringstream& os, bool& pass) {
  SimulationConfig config = echoConfig(0.0, -1.0);
  config.spectrum.classCount = 1;
  config.grid.pointCount = 51;
  config.schedule.tEnd = 18.0;
  RunRecord record = execute(config);
  int delay = config.grid.pointCount - 1;
  Real worst = 0.0;
  for (int n = delay; n <= record.steps; ++n)
    worst = std::max(worst, std::abs(record.forwardAtExit[n] -
                                     record.forwardAtEntrance[n - delay]));
  Real scale = record.forwardAtEntrance.cwiseAbs().maxCoeff();
  os << "per-sample error " << worst / scale << " (relative)";
  check(worst < 1e-12 * scale, pass);
}

void beerLambert(std::ostringstream& os, bool& pass) {
  os << "transmission vs e^-d:";
  for (Real d : {1.0, 2.0, 5.0}) {
    SimulationConfig config = echoConfig(d, -1.0);
    config.spectrum.classCount = 640;
    config.pulse.center = 8.0;
    config.pulse.width = 2.0;
    config.schedule.tEnd = 28.0;
    RunRecord record = execute(config);
    Real T = transmission(record);
    Real expected = std::exp(-d);
    os << " d=" << d << ": " << T << "/" << expected;
    check(std::abs(T - expected) < 0.01 * expected, pass);
  }
}

void backwardRetrieval(std::ostringstream& os, bool& pass) {
  os << "eta vs (1-e^-d)^2:";
  std::vector<Real> etas;
  for (Real d : {1.0, 2.0, 5.0, 10.0, 20.0}) {
    SimulationConfig config = echoConfig(d);
    RunRecord record = execute(config);
    Real eta = efficiency(record);
    etas.push_back(eta);
    os << " d=" << d << ": " << eta;
    if (d <= 10.0) check(std::abs(eta - backwardFormula(d)) <= 0.02, pass);
  }
  for (std::size_t i = 1; i < etas.size(); ++i) check(etas[i] > etas[i - 1], pass);

  // Richardson-extrapolated fine-grid reference at d = 5, independent of the
  // production resolution.
  SimulationConfig coarse = echoConfig(5.0);
  coarse.grid.pointCount = 51;
  SimulationConfig fine = echoConfig(5.0);
  fine.grid.pointCount = 101;
  Real etaCoarse = efficiency(execute(coarse));
  Real etaFine = efficiency(execute(fine));
  Real richardson = (4.0 * etaFine - etaCoarse) / 3.0;
  os << "; richardson(d=5) = " << richardson;
  check(std::abs(richardson - backwardFormula(5.0)) <= 0.02, pass);
}

void forwardRetrieval(std::ostringstream& os, bool& pass) {
  // The d^2 e^-d forward-echo result holds when the pulse is long compared
  // with the medium transit (otherwise depth slices re-emit out of phase and
  // the primary echo loses energy to a slow tail): thin medium, slow pulse.
  os << "eta vs d^2 e^-d:";
  for (Real d : {1.0, 2.0, 4.0}) {
    SimulationConfig config = echoConfig(d, 15.0, /*imprint=*/false);
    config.grid.length = 0.25;
    config.grid.pointCount = 26;
    config.grid.leadIn = 6.0;
    config.grid.leadOut = 1.0;
    config.pulse.center = 4.5;
    config.pulse.width = 1.5;
    config.schedule.tEnd = 28.0;
    RunRecord record = execute(config);
    Real eta = efficiency(record);
    os << " d=" << d << ": " << eta << "/" << forwardFormula(d);
    check(std::abs(eta - forwardFormula(d)) <= 0.02, pass);
  }
}

void timeReversal(std::ostringstream& os, bool& pass) {
  SimulationConfig config = echoConfig(20.0);
  RunRecord record = execute(config);
  auto overlap = echoOverlap(record, false);
  os << "fidelity " << overlap.fidelity << ", phase " << overlap.phase;
  check(overlap.fidelity >= 0.99, pass);
  check(std::abs(std::abs(overlap.phase) - kPi) <= 0.05, pass);
}

SimulationConfig oracleCompareConfig() {
  SimulationConfig config;
  config.grid.pointCount = 101;
  config.grid.leadIn = 4.0;
  config.grid.leadOut = 2.0;
  config.spectrum.gammaInh = 2.0;
  config.spectrum.classCount = 192;
  config.spectrum.supportWidth = 5.0;
  config.medium.opticalDepth = 3.0;
  config.pulse.center = 1.0;
  config.pulse.width = 1.0;
  config.pulse.amplitudeScale = 1.0e-3;
  config.schedule.events.push_back({EventKind::DetuningFlip, 7.5});
  config.schedule.events.push_back({EventKind::PhaseImprint, 7.5});
  config.schedule.tEnd = 22.0;
  OracleConfig oracle;
  oracle.atomCount = 20;
  oracle.modeCount = 128;
  oracle.boxLength = 40.0;
  oracle.k0 = 200.0 * kPi;
  config.oracle = oracle;
  return config;
}

void oracleEquivalence(std::ostringstream& os, bool& pass) {
  ComparisonReport report = compareToSemiclassical(oracleCompareConfig());
  os << "eta solver " << report.solverEfficiency << " vs oracle "
     << report.oracleEfficiency << " (rel " << report.efficiencyRelDiff << "), L2 "
     << report.seriesDistance;
  check(report.efficiencyRelDiff <= 0.05, pass);
  check(report.seriesDistance <= 0.05, pass);
}

void exactSymmetry(std::ostringstream& os, bool& pass) {
  OracleParams params;
  params.atomCount = 200;
  params.modeCount = 400;
  params.boxLength = 44.0;
  params.mediumLength = 1.0;
  params.k0 = 200.0 * kPi;
  params.gammaInh = 4.0;
  params.effectiveDepth = 20.0;
  OracleSystem system = buildOracle(params);
  PulseShape pulse = PulseShape::gaussian(5.0, 1.0);
  OracleState initial = inputPhotonState(system, pulse, 0.0);

  const Real t0 = 11.0;
  OracleState atFlip = evolve(initial, system, t0);
  Real completeness = atomicPopulation(system, atFlip);
  auto controlled = applyCribControl(atFlip, system);

  const Real dt = 0.02;
  const int count = static_cast<int>(t0 / dt);
  VectorXc forward = envelopeSeries(system, initial, Band::Forward, t0, -dt, count);
  VectorXc backward =
      envelopeSeries(controlled.system, controlled.state, Band::Backward, t0, dt, count);
  Real mismatch = (backward + forward).norm() / forward.norm();
  Real phase = std::arg(forward.dot(backward));  // conj(forward) . backward

  OracleState atEcho = evolve(controlled.state, controlled.system, t0);
  Real photon = forwardPopulation(controlled.system, atEcho) +
                backwardPopulation(controlled.system, atEcho);
  Real backFraction = backwardPopulation(controlled.system, atEcho) / photon;

  os << "completeness " << completeness << ", mirror mismatch " << mismatch
     << ", phase " << phase << ", backward fraction " << backFraction;
  check(completeness >= 1.0 - 1e-3, pass);
  check(mismatch <= 2e-2, pass);
  check(std::abs(std::abs(phase) - kPi) <= 0.05, pass);
  check(backFraction >= 0.9, pass);
}

void timeBinQubits(std::ostringstream& os, bool& pass) {
  struct State {
    Real alpha, beta, phase;
  };
  const Real r = 1.0 / std::sqrt(2.0);
  std::vector<State> states = {{1.0, 0.0, 0.0},       {0.0, 1.0, 0.0},
                               {r, r, 0.0},           {r, r, kPi / 2.0},
                               {r, r, kPi},           {r, r, 3.0 * kPi / 2.0}};
  SimulationConfig reference = echoConfig(20.0, 18.0);
  reference.pulse.kind = PulseKind::TimeBinQubit;
  reference.pulse.center = 4.5;
  reference.pulse.width = 0.6;
  reference.pulse.binSeparation = 4.0;
  reference.schedule.tEnd = 30.0;
  os << "fidelity/leakage:";
  for (const auto& state : states) {
    SimulationConfig config = reference;
    config.pulse.alpha = state.alpha;
    config.pulse.beta = state.beta;
    config.pulse.relativePhase = state.phase;
    RunRecord record = execute(config);
    TimeBinParams params;
    params.alpha = state.alpha;
    params.beta = state.beta;
    params.relativePhase = state.phase;
    params.binSeparation = config.pulse.binSeparation;
    params.binWidth = config.pulse.width;
    params.center = config.pulse.center;
    QubitResult qubit = timebinFidelity(record, params);
    Real eta = efficiency(record);
    os << " (" << qubit.fidelity << ", " << qubit.leakage << ")";
    check(qubit.fidelity >= 0.99, pass);
    check(qubit.leakage <= 1.0 - eta + 0.01, pass);
  }
}

void inverseOrderRecall(std::ostringstream& os, bool& pass) {
  SimulationConfig config = echoConfig(20.0, 13.0);
  config.grid.leadIn = 1.0;
  config.pulse.kind = PulseKind::PulseTrain;
  config.pulse.pulses = {
      PulseEnvelope{PulseKind::Gaussian, 2.0, 0.45, 1.0, 0.0},
      PulseEnvelope{PulseKind::Gaussian, 5.0, 0.45, 1.0, 0.0},
      PulseEnvelope{PulseKind::Gaussian, 9.0, 0.45, 1.0, 0.0},
  };
  config.schedule.tEnd = 27.0;
  RunRecord record = execute(config);
  OrderingReport report = orderingCheck(record, 3);
  os << "reversed " << (report.strictlyReversed ? "yes" : "no") << ", efficiencies";
  Real lo = 1e9, hi = 0.0;
  for (Real eta : report.perPulseEfficiency) {
    os << " " << eta;
    lo = std::min(lo, eta);
    hi = std::max(hi, eta);
  }
  check(report.strictlyReversed, pass);
  check((hi - lo) / hi <= 0.02, pass);
}

void shelving(std::ostringstream& os, bool& pass) {
  SimulationConfig base = echoConfig(5.0);
  RunRecord plain = execute(base);

  const Real tau = 3.0;
  SimulationConfig paused = base;
  ControlEvent shelve;
  shelve.kind = EventKind::ShelvePause;
  shelve.time = 15.0;
  shelve.duration = tau;
  paused.schedule.events.push_back(shelve);
  paused.schedule.tEnd = 27.0;
  RunRecord delayed = execute(paused);

  int n0 = plain.sampleIndex(15.0);
  Real peakPlain = peakTime(plain.backwardAtEntrance, plain.dt, n0, plain.steps + 1);
  Real peakDelayed =
      peakTime(delayed.backwardAtEntrance, delayed.dt, n0, delayed.steps + 1);
  Real delay = peakDelayed - peakPlain;

  int shift = static_cast<int>(std::lround(tau / plain.dt));
  Real diff = 0.0, norm = 0.0;
  for (int n = n0; n <= plain.steps; ++n) {
    diff += std::norm(delayed.backwardAtEntrance[n + shift] - plain.backwardAtEntrance[n]);
    norm += std::norm(plain.backwardAtEntrance[n]);
  }
  os << "delay " << delay << " (tau " << tau << "), shape change " << diff / norm;
  check(std::abs(delay - tau) <= plain.dt, pass);
  check(diff / norm < 1e-6, pass);
}

void frequencyMultiplexing(std::ostringstream& os, bool& pass) {
  const Scenario* scenario = findScenario("two-line-multiplexing");
  SimulationConfig both = parseConfig(scenario->config);

  SimulationConfig onlyLine1 = both;
  onlyLine1.schedule.events.pop_back();  // drop the line-2 rephase

  auto windowEnergy = [](const RunRecord& record, Real lo, Real hi) {
    Real sum = 0.0;
    for (int n = record.sampleIndex(lo); n < record.sampleIndex(hi); ++n)
      sum += std::norm(record.backwardAtEntrance[n]);
    return sum * record.dt;
  };

  RunRecord single = execute(onlyLine1);
  Real line1 = windowEnergy(single, 10.0, 19.0);
  Real line2Silent = windowEnergy(single, 19.0, single.tEnd);
  os << "line2/line1 (unrephased) " << line2Silent / line1;
  check(line2Silent < 1e-3 * line1, pass);

  RunRecord dual = execute(both);
  Real line2 = windowEnergy(dual, 19.0, dual.tEnd);
  Real secondPeak =
      peakTime(dual.backwardAtEntrance, dual.dt, dual.sampleIndex(19.0), dual.steps + 1);
  os << "; line-2 echo energy " << line2 << " at t = " << secondPeak;
  check(line2 > 0.5 * line1, pass);
  check(std::abs(secondPeak - 30.5) < 0.5, pass);
}

void propertySuites(std::ostringstream& os, bool& pass) {
  // linearity + superposition
  SimulationConfig config = echoConfig(3.0, 10.0);
  config.grid.leadIn = 4.0;
  config.grid.pointCount = 41;
  config.spectrum.gammaInh = 6.0;
  config.spectrum.classCount = 256;
  config.pulse.center = 3.0;
  config.pulse.width = 0.5;
  config.schedule.events.clear();
  config.schedule.events.push_back({EventKind::DetuningFlip, 8.0});
  config.schedule.events.push_back({EventKind::PhaseImprint, 8.0});
  config.schedule.tEnd = 14.0;
  RunRecord base = execute(config);
  SimulationConfig scaledConfig = config;
  scaledConfig.pulse.amplitudeScale *= 2.0;
  RunRecord scaled = execute(scaledConfig);
  Real linearity = (scaled.backwardAtEntrance - 2.0 * base.backwardAtEntrance).norm() /
                   (2.0 * base.backwardAtEntrance.norm());
  os << "linearity " << linearity;
  check(linearity < 1e-10, pass);

  SimulationConfig trainConfig = config;
  trainConfig.pulse.kind = PulseKind::PulseTrain;
  trainConfig.pulse.normalize = false;
  PulseEnvelope a{PulseKind::Gaussian, 2.2, 0.5, 0.7, 0.0};
  PulseEnvelope b{PulseKind::Gaussian, 3.8, 0.5, Complex{0.0, 0.4}, 0.0};
  trainConfig.pulse.pulses = {a};
  RunRecord runA = execute(trainConfig);
  trainConfig.pulse.pulses = {b};
  RunRecord runB = execute(trainConfig);
  trainConfig.pulse.pulses = {a, b};
  RunRecord runAB = execute(trainConfig);
  Real superposition =
      (runAB.backwardAtEntrance - runA.backwardAtEntrance - runB.backwardAtEntrance)
          .norm() /
      runAB.backwardAtEntrance.norm();
  os << ", superposition " << superposition;
  check(superposition < 1e-10, pass);

  Real balance = base.energyBalanceResidual();
  os << ", energy balance " << balance;
  check(balance < 1e-6, pass);

  SimulationConfig flipTwice = config;
  flipTwice.schedule.events.clear();
  flipTwice.schedule.events.push_back({EventKind::DetuningFlip, 6.0});
  flipTwice.schedule.events.push_back({EventKind::DetuningFlip, 6.0});
  SimulationConfig noFlip = config;
  noFlip.schedule.events.clear();
  RunRecord doubled = execute(flipTwice);
  RunRecord plain = execute(noFlip);
  Real involution = (doubled.forwardAtExit - plain.forwardAtExit).norm() /
                    plain.forwardAtExit.norm();
  os << ", flip involution " << involution;
  check(involution < 1e-10, pass);

  // convergence order
  auto runAt = [&](int pointCount) {
    SimulationConfig c = config;
    c.grid.pointCount = pointCount;
    c.spectrum.classCount = 384;
    return execute(c);
  };
  RunRecord coarse = runAt(21);
  RunRecord mid = runAt(41);
  RunRecord fine = runAt(81);
  auto sampled = [](const RunRecord& record, int every) {
    VectorXc out(record.steps / every + 1);
    for (int i = 0; i < out.size(); ++i) out[i] = record.backwardAtEntrance[i * every];
    return out;
  };
  Real e1 = (sampled(coarse, 1) - sampled(mid, 2)).norm();
  Real e2 = (sampled(mid, 2) - sampled(fine, 4)).norm();
  Real ratio = e1 / e2;
  os << ", convergence ratio " << ratio;
  check(ratio > 3.5 && ratio < 4.5, pass);

  // config round-trip and determinism
  const Scenario* scenario = findScenario("basic-echo");
  SimulationConfig parsed = parseConfig(scenario->config);
  std::string canonical = serializeConfig(parsed);
  bool fixedPoint = serializeConfig(parseConfig(canonical)) == canonical;
  os << ", round-trip " << (fixedPoint ? "ok" : "BROKEN");
  check(fixedPoint, pass);

  RunRecord again = execute(config);
  bool deterministic =
      renderTimeSeries(base, 5) == renderTimeSeries(again, 5);
  os << ", determinism " << (deterministic ? "ok" : "BROKEN");
  check(deterministic, pass);
}

void shiftCalculators(std::ostringstream& os, bool& pass) {
  Real zeeman = shiftFromField(zeemanShiftModel(), 1.0);
  Real stark = shiftFromField(dcStarkShiftModel(), 1.0);
  Real ac = shiftFromField(acStarkShiftModel(10.0), 1.0);
  Real acInverted = shiftFromField(acStarkShiftModel(-10.0), 1.0);
  os << "zeeman " << zeeman << " MHz/mT, dcStark " << stark << " MHz/(V/cm), acStark "
     << ac << " / " << acInverted << " MHz/(1e9 W/m^2)";
  check(zeeman == 13.0, pass);
  check(stark == 0.1, pass);
  check(ac == 200.0, pass);
  check(acInverted == -200.0, pass);
  for (auto model : {zeemanShiftModel(), dcStarkShiftModel(), acStarkShiftModel()})
    check(shiftFromField(model, 2.0) == 2.0 * shiftFromField(model, 1.0), pass);
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "vacuum transport exactness", vacuumTransport, 1.0},
      {2, "Beer-Lambert transmission", beerLambert, 30.0},
      {3, "backward-retrieval efficiency", backwardRetrieval, 120.0},
      {4, "forward-retrieval efficiency", forwardRetrieval, 60.0},
      {5, "time reversal and pi phase", timeReversal, 60.0},
      {6, "oracle equivalence", oracleEquivalence, 300.0},
      {7, "exact symmetry at one excitation", exactSymmetry, 300.0},
      {8, "time-bin qubit fidelity", timeBinQubits, 180.0},
      {9, "inverse-order recall", inverseOrderRecall, 60.0},
      {10, "shelving delay", shelving, 60.0},
      {11, "frequency multiplexing", frequencyMultiplexing, 120.0},
      {12, "property suites", propertySuites, 600.0},
      {13, "physical shift calculators", shiftCalculators, 1.0},
  };

  bool allPass = true;
  for (const auto& criterion : criteria) {
    std::ostringstream detail;
    bool pass = true;
    auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(detail, pass);
    } catch (const std::exception& err) {
      pass = false;
      detail << " exception: " << err.what();
    }
    Real seconds =
        std::chrono::duration<Real>(std::chrono::steady_clock::now() - start).count();
    if (seconds > criterion.runtimeCap) {
      pass = false;
      detail << " [runtime " << seconds << " s over cap " << criterion.runtimeCap << "]";
    }
    allPass = allPass && pass;
    std::printf("[%s] criterion %2d: %s — %s (%.1f s)\n", pass ? "PASS" : "FAIL",
                criterion.id, criterion.name.c_str(), detail.str().c_str(), seconds);
    std::fflush(stdout);
  }
  return allPass ? 0 : 1;
}
