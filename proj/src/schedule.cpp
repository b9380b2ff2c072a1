#include "crib/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crib/errors.hpp"

namespace crib {

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::DetuningFlip: return "detuningFlip";
    case EventKind::PhaseImprint: return "phaseImprint";
    case EventKind::RemoveBroadening: return "removeBroadening";
    case EventKind::ReestablishBroadening: return "reestablishBroadening";
    case EventKind::ShelvePause: return "shelvePause";
    case EventKind::BandRephase: return "bandRephase";
  }
  return "detuningFlip";
}

EventKind eventKindFromString(const std::string& name) {
  if (name == "detuningFlip") return EventKind::DetuningFlip;
  if (name == "phaseImprint") return EventKind::PhaseImprint;
  if (name == "removeBroadening") return EventKind::RemoveBroadening;
  if (name == "reestablishBroadening") return EventKind::ReestablishBroadening;
  if (name == "shelvePause") return EventKind::ShelvePause;
  if (name == "bandRephase") return EventKind::BandRephase;
  throw ConfigError("unknown event kind '" + name + "'");
}

std::optional<Real> ControlSchedule::retrievalTime() const {
  for (const auto& event : events) {
    if (event.kind == EventKind::DetuningFlip || event.kind == EventKind::BandRephase ||
        event.kind == EventKind::ReestablishBroadening)
      return event.time;
  }
  return std::nullopt;
}

bool ControlSchedule::hasPhaseImprint() const {
  return std::any_of(events.begin(), events.end(), [](const ControlEvent& e) {
    return e.kind == EventKind::PhaseImprint;
  });
}

bool ValidationReport::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const ScheduleCheck& c) {
    return c.level == CheckLevel::Error;
  });
}

bool ValidationReport::clean() const {
  return std::all_of(checks.begin(), checks.end(), [](const ScheduleCheck& c) {
    return c.level == CheckLevel::Pass;
  });
}

std::vector<std::string> ValidationReport::warnings() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (c.level == CheckLevel::Warn) out.push_back(c.condition + ": " + c.message);
  return out;
}

std::string ValidationReport::firstError() const {
  for (const auto& c : checks)
    if (c.level == CheckLevel::Error) return c.condition + ": " + c.message;
  return {};
}

namespace {

void addCheck(ValidationReport& report, std::string condition, CheckLevel level,
              Real ratio, std::string message) {
  report.checks.push_back(
      ScheduleCheck{std::move(condition), level, ratio, std::move(message)});
}

std::string ratioText(const char* label, Real ratio) {
  std::ostringstream os;
  os << label << " = " << ratio;
  return os.str();
}

}  // namespace

ValidationReport validateSchedule(const ControlSchedule& schedule,
                                  const PulseShape& shape,
                                  const ScheduleContext& context) {
  constexpr Real kMuchLess = 0.1;
  ValidationReport report;

  // Event ordering and structural constraints.
  bool ordered = true;
  for (std::size_t i = 1; i < schedule.events.size(); ++i)
    if (schedule.events[i].time < schedule.events[i - 1].time) ordered = false;
  addCheck(report, "events-ordered", ordered ? CheckLevel::Pass : CheckLevel::Error, 0.0,
           ordered ? "events are time-ordered" : "events are not time-ordered");

  int imprints = 0;
  bool removed = false;
  bool badFlipWhileRemoved = false;
  bool badReestablishSign = false;
  for (const auto& event : schedule.events) {
    switch (event.kind) {
      case EventKind::PhaseImprint:
        ++imprints;
        break;
      case EventKind::RemoveBroadening:
        removed = true;
        break;
      case EventKind::ReestablishBroadening:
        if (event.sign != +1 && event.sign != -1) badReestablishSign = true;
        removed = false;
        break;
      case EventKind::DetuningFlip:
      case EventKind::BandRephase:
        if (removed) badFlipWhileRemoved = true;
        break;
      default:
        break;
    }
  }
  addCheck(report, "single-phase-imprint",
           imprints <= 1 ? CheckLevel::Pass : CheckLevel::Error, Real(imprints),
           imprints <= 1 ? "at most one phase imprint"
                         : "phase imprint while already backward-coupled");
  if (badFlipWhileRemoved)
    addCheck(report, "flip-while-removed", CheckLevel::Error, 0.0,
             "detuning flip while broadening is removed");
  if (badReestablishSign)
    addCheck(report, "reestablish-sign", CheckLevel::Error, 0.0,
             "reestablish sign must be +1 or -1");

  // delta_t << delta_t_light.
  Real light = shape.durationMeasure();
  Real switchingRatio = light > 0.0 ? schedule.switchingDuration / light : 0.0;
  addCheck(report, "switching-fast",
           switchingRatio < kMuchLess ? CheckLevel::Pass : CheckLevel::Warn,
           switchingRatio, ratioText("switchingDuration / lightDuration", switchingRatio));

  // t0 << T_decoh.
  auto t0 = schedule.retrievalTime();
  if (t0 && context.decoherenceTime) {
    Real ratio = *t0 / *context.decoherenceTime;
    addCheck(report, "storage-short",
             ratio < kMuchLess ? CheckLevel::Pass : CheckLevel::Warn, ratio,
             ratioText("t0 / T_decoh", ratio));
  } else {
    addCheck(report, "storage-short", CheckLevel::Pass, 0.0,
             "no decoherence time configured");
  }

  // Retrieval should wait for the pulse to have fully entered the medium.
  if (t0) {
    Real fullyEntered = context.leadIn + shape.fullyEnteredTime();
    if (*t0 < fullyEntered)
      addCheck(report, "flip-before-entry", CheckLevel::Warn, *t0 / fullyEntered,
               "retrieval trigger before the pulse has fully entered");
    else
      addCheck(report, "flip-before-entry", CheckLevel::Pass, 0.0,
               "pulse fully entered before retrieval");
  }

  // Broadening within the configured hyperfine/fine-structure bound.
  if (context.broadeningBound > 0.0) {
    Real ratio = context.maxDetuning / context.broadeningBound;
    addCheck(report, "broadening-bound",
             ratio < 1.0 ? CheckLevel::Pass : CheckLevel::Warn, ratio,
             ratioText("maxDetuning / hyperfineBound", ratio));
  }

  return report;
}

}  // namespace crib
