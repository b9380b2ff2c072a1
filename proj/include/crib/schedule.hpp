#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crib/profile.hpp"
#include "crib/pulse.hpp"
#include "crib/types.hpp"

namespace crib {

enum class EventKind {
  DetuningFlip,
  PhaseImprint,
  RemoveBroadening,
  ReestablishBroadening,
  ShelvePause,
  BandRephase,
};

std::string to_string(EventKind kind);
EventKind eventKindFromString(const std::string& name);

struct ControlEvent {
  EventKind kind = EventKind::DetuningFlip;
  Real time = 0.0;
  Real duration = 0.0;  // ShelvePause
  Real bandLo = 0.0;    // BandRephase
  Real bandHi = 0.0;
  int sign = -1;        // ReestablishBroadening

  bool operator==(const ControlEvent&) const = default;
};

/// Timed protocol events, in execution order. `switchingDuration` is the
/// physical duration of the sudden detuning change; the solver treats the
/// events as instantaneous and the validator checks the duration is small.
struct ControlSchedule {
  std::vector<ControlEvent> events;
  Real switchingDuration = 0.0;
  std::optional<Real> tEnd;

  /// Time of the first rephasing trigger (flip, band rephase, or opposite-
  /// sign reestablish); the echo/transmission window boundary t0.
  std::optional<Real> retrievalTime() const;
  bool hasPhaseImprint() const;
};

enum class CheckLevel { Pass, Warn, Error };

struct ScheduleCheck {
  std::string condition;
  CheckLevel level = CheckLevel::Pass;
  Real ratio = 0.0;
  std::string message;
};

struct ValidationReport {
  std::vector<ScheduleCheck> checks;

  bool ok() const;        // no errors
  bool clean() const;     // no errors and no warnings
  std::vector<std::string> warnings() const;
  std::string firstError() const;
};

struct ScheduleContext {
  std::optional<Real> decoherenceTime;  // T_decoh, if finite
  Real leadIn = 0.0;                    // entry delay of the input pulse
  Real maxDetuning = 0.0;               // largest |detuning| on the grid
  Real broadeningBound = 0.0;           // hyperfine bound, 0 = none
};

/// Protocol-condition checks: switching much faster than the light
/// (ratio < 0.1 passes), storage much shorter than decoherence, events
/// time-ordered, a single phase imprint, and flip-after-full-entry.
/// Always returns a report; errors never throw from here.
ValidationReport validateSchedule(const ControlSchedule& schedule,
                                  const PulseShape& shape,
                                  const ScheduleContext& context);

}  // namespace crib
