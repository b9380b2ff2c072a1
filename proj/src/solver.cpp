#include "crib/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crib/errors.hpp"

namespace crib {

std::string to_string(OutputChannel channel) {
  return channel == OutputChannel::BackwardAtEntrance ? "backwardAtEntrance"
                                                      : "forwardAtExit";
}

int RunRecord::sampleIndex(Real t) const {
  int n = static_cast<int>(std::lround(t / dt));
  return std::clamp(n, 0, steps);
}

Real RunRecord::energyBalanceResidual() const {
  Real total = energyInjected.size() > 0 ? energyInjected[energyInjected.size() - 1] : 0.0;
  if (!(total > 0.0)) return 0.0;
  Real worst = 0.0;
  for (Eigen::Index n = 0; n < energyInjected.size(); ++n) {
    Real residual = energyInjected[n] - energyTransmitted[n] - energyBackward[n] -
                    storedExcitation[n] - fieldEnergy[n] - energyDecayed[n];
    worst = std::max(worst, std::abs(residual));
  }
  return worst / total;
}

Real SolverState::storedExcitation() const {
  return (classWeight.transpose() * coherence.cwiseAbs2()).sum() * grid.dz;
}

Real SolverState::fieldEnergy() const {
  return (forward.squaredNorm() + backward.squaredNorm()) * grid.dz;
}

VectorXc SolverState::averagedCoherence() const {
  return (classWeight.transpose() * coherence).transpose();
}

Real calibrateCoupling(const DetuningProfile& profile, const SpectralGrid& spectral,
                       Real opticalDepth, Real mediumLength) {
  if (opticalDepth < 0.0) throw ConfigError("optical depth must be >= 0", "medium.d");
  if (opticalDepth == 0.0) return 0.0;
  if (profile.isGradient()) {
    // Steady state of the gradient medium: a resonant probe crosses one
    // resonance point, intensity transmission exp(-2 pi kappa beta / |slope|).
    return opticalDepth * std::abs(profile.slope) / (2.0 * kPi);
  }
  // Spectral medium: amplitude decay rate kappa*beta*pi*g(0) at the
  // reference line center, intensity e^{-d} across length L.
  Real center = profile.components.front().center;
  Real g0 = spectral.effectiveDensity(profile, center);
  if (!(g0 > 0.0))
    throw ConfigError("profile density vanishes at the calibration frequency",
                      "spectrum");
  return opticalDepth / (2.0 * kPi * g0 * mediumLength);
}

SolverState makeSolverState(const SpatialGrid& grid, const SpectralGrid& spectral,
                            const DetuningProfile& profile, const MediumParams& medium) {
  SolverState state;
  state.grid = grid;
  state.spectral = spectral;
  state.profile = profile;
  state.medium = medium;

  const int nodes = grid.nodeCount();
  const int cells = grid.mediumCellCount();
  const auto classes = spectral.size();

  state.forward = VectorXc::Zero(nodes);
  state.backward = VectorXc::Zero(nodes);
  state.coherence = MatrixXc::Zero(classes, cells);

  state.detuningAsBuilt.resize(classes, cells);
  if (profile.isGradient()) {
    for (int c = 0; c < cells; ++c)
      state.detuningAsBuilt(0, c) = profile.slope * (grid.cellZ(c) - 0.5 * grid.length);
  } else {
    for (int c = 0; c < cells; ++c) state.detuningAsBuilt.col(c) = spectral.nodes;
  }
  state.detuning = profile.sign * state.detuningAsBuilt;
  state.classWeight = spectral.classWeights();

  Real kappaBeta = calibrateCoupling(profile, spectral, medium.opticalDepth, grid.length);
  state.kappa = std::sqrt(kappaBeta);
  state.shelvedUntil = -1.0;
  return state;
}

namespace {

void rebuildRotation(SolverState& state) {
  Real decay = std::exp(-state.medium.decayRate * state.grid.dt / 2.0);
  state.rotationHalf = (kI * state.grid.dt / 2.0 * state.detuning.array()).exp() * decay;
  state.rotationValid = true;
}

inline bool shelved(const SolverState& state) {
  return state.t < state.shelvedUntil - 0.5 * state.grid.dt;
}

void halfRotation(SolverState& state) {
  if (shelved(state)) return;
  if (state.medium.decayRate > 0.0) {
    Real before = state.storedExcitation();
    state.coherence.array() *= state.rotationHalf.array();
    state.energyDecayed += before - state.storedExcitation();
  } else {
    state.coherence.array() *= state.rotationHalf.array();
  }
}

// Exact flow of the local coupling subsystem over duration tau:
//   d/dt eps = i kappa <s>,  d/dt s_m = i kappa eps
// which rotates (eps, <s>) by angle kappa*tau and preserves
// |eps|^2 + sum_m w_m g_m |s_m|^2 exactly.
void halfKick(SolverState& state, bool upwind) {
  if (state.kappa == 0.0 || shelved(state)) return;
  const int cells = state.grid.mediumCellCount();
  const int entrance = state.grid.entranceNode();
  const bool fwd = state.coupling == CouplingDirection::Forward;
  int offset = entrance + ((fwd == upwind) ? 0 : 1);
  VectorXc& field = fwd ? state.forward : state.backward;
  auto seg = field.segment(offset, cells);

  Real angle = state.kappa * state.grid.dt / 2.0;
  Real c = std::cos(angle), s = std::sin(angle);

  Eigen::RowVectorXcd avg = state.classWeight.transpose() * state.coherence;
  VectorXc eps = seg;
  VectorXc add = (kI * s) * eps - (1.0 - c) * avg.transpose();
  seg = c * eps + (kI * s) * avg.transpose();
  state.coherence.rowwise() += add.transpose();
}

void transport(SolverState& state, const PulseShape& shape) {
  const int n = state.grid.nodeCount();
  Real dz = state.grid.dz;

  Complex out = state.forward[n - 1];
  state.energyTransmitted += std::norm(out) * dz;
  std::copy_backward(state.forward.data(), state.forward.data() + n - 1,
                     state.forward.data() + n);
  Complex in = shape.sample(state.t + state.grid.dt);
  state.forward[0] = in;
  state.energyInjected += std::norm(in) * dz;

  Complex back = state.backward[0];
  state.energyBackward += std::norm(back) * dz;
  std::copy(state.backward.data() + 1, state.backward.data() + n,
            state.backward.data());
  state.backward[n - 1] = Complex{0.0, 0.0};
}

}  // namespace

Real defaultEndTime(const SpatialGrid& grid, const PulseShape& shape,
                    const ControlSchedule& schedule) {
  Real inputClear = grid.leadIn() + shape.supportEnd() + grid.length + grid.leadOut();
  Real tEnd = inputClear + 1.0;
  Real lastRephase = 0.0;
  Real pauses = 0.0;
  for (const auto& event : schedule.events) {
    if (event.kind == EventKind::DetuningFlip || event.kind == EventKind::BandRephase ||
        event.kind == EventKind::ReestablishBroadening)
      lastRephase = std::max(lastRephase, event.time);
    if (event.kind == EventKind::ShelvePause) pauses += event.duration;
  }
  if (lastRephase > 0.0) {
    Real echoClear =
        2.0 * lastRephase + pauses - (grid.leadIn() + shape.supportBegin()) + 2.0;
    tEnd = std::max(tEnd, echoClear);
  }
  return tEnd;
}

void step(SolverState& state, const PulseShape& shape, Real dt) {
  if (std::abs(dt - state.grid.dt) > 1e-12 * state.grid.dt)
    throw NumericalError("step size must match the characteristics step dz/c");
  if (!state.rotationValid) rebuildRotation(state);

  halfRotation(state);
  halfKick(state, /*upwind=*/true);
  transport(state, shape);
  halfKick(state, /*upwind=*/false);
  halfRotation(state);

  state.t += dt;
  ++state.stepIndex;
  if (state.coherence.size() > 0) {
    Real peak = std::sqrt(state.coherence.cwiseAbs2().maxCoeff());
    state.maxAbsCoherence = std::max(state.maxAbsCoherence, peak);
  }
}

void applyEvent(SolverState& state, const ControlEvent& event) {
  if (std::abs(event.time - state.t) > 0.5 * state.grid.dt + 1e-12)
    throw ConfigError("event time does not match solver time (out of order?)");
  switch (event.kind) {
    case EventKind::DetuningFlip:
      state.profile = flip(state.profile);  // throws when removed
      state.detuning = -state.detuning;
      state.rotationValid = false;
      break;
    case EventKind::PhaseImprint:
      if (state.coupling == CouplingDirection::Backward)
        throw ConfigError("phase imprint while already backward-coupled");
      state.coupling = CouplingDirection::Backward;
      break;
    case EventKind::BandRephase: {
      if (!(event.bandLo < event.bandHi)) throw ConfigError("band requires lo < hi");
      Eigen::Index flipped = 0;
      for (Eigen::Index c = 0; c < state.detuning.cols(); ++c) {
        for (Eigen::Index m = 0; m < state.detuning.rows(); ++m) {
          Real d = state.detuning(m, c);
          if (d >= event.bandLo && d <= event.bandHi) {
            state.detuning(m, c) = -d;
            ++flipped;
          }
        }
      }
      if (flipped == 0)
        state.warnings.push_back("bandRephase selected no detuning classes");
      state.rotationValid = false;
      break;
    }
    case EventKind::RemoveBroadening:
      state.detuning.setZero();
      state.profile.sign = 0;
      state.rotationValid = false;
      break;
    case EventKind::ReestablishBroadening: {
      if (event.sign != +1 && event.sign != -1)
        throw ConfigError("reestablish sign must be +1 or -1");
      state.detuning = Real(event.sign) * state.detuningAsBuilt;
      state.profile.sign = event.sign;
      state.rotationValid = false;
      break;
    }
    case EventKind::ShelvePause:
      state.shelvedUntil = state.t + event.duration;
      break;
  }
}

RunRecord runProtocol(const SpatialGrid& grid, const SpectralGrid& spectral,
                      const DetuningProfile& profile, const MediumParams& medium,
                      const PulseShape& shape, const ControlSchedule& schedule,
                      const RunOptions& options) {
  ScheduleContext context;
  context.decoherenceTime = medium.decoherenceTime;
  context.leadIn = grid.leadIn();
  context.maxDetuning = 0.0;
  if (profile.isGradient())
    context.maxDetuning = std::abs(profile.slope) * grid.length / 2.0;
  else if (spectral.size() > 0)
    context.maxDetuning = spectral.nodes.cwiseAbs().maxCoeff();
  context.broadeningBound = profile.maxBroadeningBound;

  ValidationReport validation = validateSchedule(schedule, shape, context);
  if (!validation.ok() && options.throwOnScheduleError)
    throw ConfigError("schedule validation failed: " + validation.firstError());

  SolverState state = makeSolverState(grid, spectral, profile, medium);

  Real tEnd = options.tEnd > 0.0 ? options.tEnd : defaultEndTime(grid, shape, schedule);
  int steps = static_cast<int>(std::lround(tEnd / grid.dt));

  RunRecord record;
  record.dt = grid.dt;
  record.steps = steps;
  record.tEnd = steps * grid.dt;
  record.forwardAtEntrance = VectorXc::Zero(steps + 1);
  record.forwardAtExit = VectorXc::Zero(steps + 1);
  record.backwardAtEntrance = VectorXc::Zero(steps + 1);
  record.storedExcitation = VectorXr::Zero(steps + 1);
  record.fieldEnergy = VectorXr::Zero(steps + 1);
  record.energyInjected = VectorXr::Zero(steps + 1);
  record.energyTransmitted = VectorXr::Zero(steps + 1);
  record.energyBackward = VectorXr::Zero(steps + 1);
  record.energyDecayed = VectorXr::Zero(steps + 1);
  record.warnings = validation.warnings();

  auto t0 = schedule.retrievalTime();
  record.retrievalTime = t0.value_or(0.0);
  record.inputDelay = grid.leadIn();
  record.channel = schedule.hasPhaseImprint() ? OutputChannel::BackwardAtEntrance
                                              : OutputChannel::ForwardAtExit;

  const int entrance = grid.entranceNode();
  const int exit = grid.exitNode();
  std::size_t cursor = 0;

  auto sample = [&](int n) {
    record.forwardAtEntrance[n] = state.forward[entrance];
    record.forwardAtExit[n] = state.forward[exit];
    record.backwardAtEntrance[n] = state.backward[entrance];
    record.storedExcitation[n] = state.storedExcitation();
    record.fieldEnergy[n] = state.fieldEnergy();
    record.energyInjected[n] = state.energyInjected;
    record.energyTransmitted[n] = state.energyTransmitted;
    record.energyBackward[n] = state.energyBackward;
    record.energyDecayed[n] = state.energyDecayed;
  };
  sample(0);

  for (int n = 0; n < steps; ++n) {
    while (cursor < schedule.events.size() &&
           schedule.events[cursor].time <= state.t + 0.5 * grid.dt) {
      const auto& event = schedule.events[cursor];
      applyEvent(state, event);
      std::ostringstream detail;
      if (event.kind == EventKind::ShelvePause) detail << "duration=" << event.duration;
      if (event.kind == EventKind::BandRephase)
        detail << "band=[" << event.bandLo << "," << event.bandHi << "]";
      if (event.kind == EventKind::ReestablishBroadening) detail << "sign=" << event.sign;
      record.eventLog.push_back(EventLogEntry{state.t, to_string(event.kind), detail.str()});
      ++cursor;
    }
    step(state, shape, grid.dt);
    sample(n + 1);
    if (n % 64 == 0) {
      if (!state.forward.allFinite() || !state.backward.allFinite() ||
          !state.coherence.allFinite()) {
        std::ostringstream os;
        os << "non-finite state at t = " << state.t << " (step " << state.stepIndex << ")";
        throw NumericalError(os.str());
      }
    }
  }
  if (cursor < schedule.events.size())
    record.warnings.push_back("schedule events beyond the end of the run were skipped");

  record.maxAbsCoherence = state.maxAbsCoherence;
  record.weakFieldViolated = state.maxAbsCoherence > 0.1;
  if (record.weakFieldViolated)
    record.warnings.push_back("weak-field validity violated: max |s| > 0.1");
  for (const auto& w : state.warnings) record.warnings.push_back(w);
  return record;
}

}  // namespace crib
