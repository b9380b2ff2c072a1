#include <doctest.h>

#include <cmath>

#include "crib/metrics.hpp"
#include "crib/solver.hpp"
#include "helpers.hpp"

using namespace crib;
using namespace crib::testing;

namespace {

// Smaller, faster run for the property checks.
SimulationConfig propertyConfig(Real d) {
  SimulationConfig config = echoConfig(d, 6.0, 10.0);
  config.grid.leadIn = 4.0;
  config.grid.pointCount = 41;
  config.spectrum.classCount = 256;
  config.pulse.center = 3.0;
  config.pulse.width = 0.5;
  config.schedule.events.clear();
  config.schedule.events.push_back({EventKind::DetuningFlip, 8.0});
  config.schedule.events.push_back({EventKind::PhaseImprint, 8.0});
  config.schedule.tEnd = 14.0;
  return config;
}

Real seriesDistance(const VectorXc& a, const VectorXc& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

}  // namespace

TEST_CASE("linearity: scaling the input scales every boundary series") {
  SimulationConfig config = propertyConfig(3.0);
  RunRecord base = runConfig(config);
  config.pulse.amplitudeScale *= 2.5;
  RunRecord scaled = runConfig(config);
  CHECK(seriesDistance(scaled.forwardAtExit, 2.5 * base.forwardAtExit.eval()) < 1e-10);
  CHECK(seriesDistance(scaled.backwardAtEntrance,
                       2.5 * base.backwardAtEntrance.eval()) < 1e-10);
}

TEST_CASE("superposition: the run of a sum is the sum of runs") {
  SimulationConfig config = propertyConfig(3.0);
  config.pulse.kind = PulseKind::PulseTrain;
  config.pulse.normalize = false;  // superposition needs raw amplitudes
  PulseEnvelope a{PulseKind::Gaussian, 2.2, 0.5, 0.7, 0.0};
  PulseEnvelope b{PulseKind::Gaussian, 3.8, 0.5, Complex{0.0, 0.4}, 0.0};

  config.pulse.pulses = {a};
  RunRecord runA = runConfig(config);
  config.pulse.pulses = {b};
  RunRecord runB = runConfig(config);
  config.pulse.pulses = {a, b};
  RunRecord runAB = runConfig(config);

  VectorXc sumExit = runA.forwardAtExit + runB.forwardAtExit;
  VectorXc sumBack = runA.backwardAtEntrance + runB.backwardAtEntrance;
  CHECK(seriesDistance(runAB.forwardAtExit, sumExit) < 1e-10);
  CHECK(seriesDistance(runAB.backwardAtEntrance, sumBack) < 1e-10);
}

TEST_CASE("energy balance holds at every step for the full protocol") {
  SimulationConfig config = propertyConfig(5.0);
  RunRecord record = runConfig(config);
  CHECK(record.energyBalanceResidual() < 1e-6);
  // The scheme is exactly norm-conserving, so the ledger is near roundoff.
  CHECK(record.energyBalanceResidual() < 1e-10);
}

TEST_CASE("trajectory-level flip involution at 1e-10") {
  SimulationConfig config = propertyConfig(3.0);
  config.schedule.events.clear();
  config.schedule.tEnd = 12.0;
  RunRecord plain = runConfig(config);

  config.schedule.events.push_back({EventKind::DetuningFlip, 6.0});
  config.schedule.events.push_back({EventKind::DetuningFlip, 6.0});
  RunRecord doubled = runConfig(config);
  CHECK(seriesDistance(doubled.forwardAtExit, plain.forwardAtExit) < 1e-10);
}

TEST_CASE("second-order convergence under grid halving") {
  // Error against the next-finer grid shrinks ~4x per halving.
  auto runAt = [](int pointCount) {
    SimulationConfig config = echoConfig(3.0, 6.0, 8.0);
    config.grid.leadIn = 4.0;
    config.grid.leadOut = 1.0;
    config.grid.pointCount = pointCount;
    config.spectrum.classCount = 384;
    config.pulse.center = 3.0;
    config.pulse.width = 0.5;
    config.schedule.tEnd = 14.0;
    return runConfig(config);
  };
  RunRecord coarse = runAt(21);
  RunRecord medium = runAt(41);
  RunRecord fine = runAt(81);

  auto sampled = [](const RunRecord& record, int every) {
    VectorXc out((record.steps / every) + 1);
    for (int i = 0; i < out.size(); ++i) out[i] = record.backwardAtEntrance[i * every];
    return out;
  };
  VectorXc c0 = sampled(coarse, 1);
  VectorXc m0 = sampled(medium, 2);
  VectorXc f0 = sampled(fine, 4);
  Real e1 = (c0 - m0).norm();
  Real e2 = (m0 - f0).norm();
  Real ratio = e1 / e2;
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("time reversal at high optical depth: fidelity and pi phase") {
  SimulationConfig config = echoConfig(20.0);
  RunRecord record = runConfig(config);
  auto overlap = echoOverlap(record, false);
  CHECK(overlap.fidelity >= 0.99);
  CHECK(std::abs(std::abs(overlap.phase) - kPi) < 0.05);
  // and the efficiency keeps climbing with d
  SimulationConfig half = echoConfig(10.0);
  CHECK(efficiency(record) > efficiency(runConfig(half)));
}

TEST_CASE("band rephasing of every node equals a full flip") {
  SimulationConfig config = propertyConfig(4.0);
  RunRecord flipped = runConfig(config);

  SimulationConfig banded = config;
  banded.schedule.events.clear();
  ControlEvent band;
  band.kind = EventKind::BandRephase;
  band.time = 8.0;
  band.bandLo = -1e6;
  band.bandHi = 1e6;
  banded.schedule.events.push_back(band);
  banded.schedule.events.push_back({EventKind::PhaseImprint, 8.0});
  RunRecord rebanded = runConfig(banded);
  CHECK(seriesDistance(rebanded.backwardAtEntrance, flipped.backwardAtEntrance) < 1e-12);
}

TEST_CASE("empty band rephase warns and does nothing") {
  SimulationConfig config = propertyConfig(4.0);
  config.schedule.events.clear();
  ControlEvent band;
  band.kind = EventKind::BandRephase;
  band.time = 12.0;  // after the transmitted pulse has fully left
  band.bandLo = 500.0;
  band.bandHi = 600.0;
  config.schedule.events.push_back(band);
  config.schedule.tEnd = 16.0;
  RunRecord record = runConfig(config);
  bool warned = false;
  for (const auto& w : record.warnings)
    if (w.find("no detuning classes") != std::string::npos) warned = true;
  CHECK(warned);
  CHECK(efficiency(record) < 1e-3);
}
