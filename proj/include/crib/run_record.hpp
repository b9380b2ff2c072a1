#pragma once

#include <string>
#include <vector>

#include "crib/types.hpp"

namespace crib {

enum class OutputChannel { BackwardAtEntrance, ForwardAtExit };

std::string to_string(OutputChannel channel);

struct EventLogEntry {
  Real time = 0.0;
  std::string kind;
  std::string detail;
};

/// Everything one protocol run produces: boundary field series at full step
/// resolution, the stored-excitation history, energy ledgers, and flags.
/// Series index n corresponds to time n * dt.
struct RunRecord {
  Real dt = 0.0;
  Real tEnd = 0.0;
  int steps = 0;

  VectorXc forwardAtEntrance;  // epsilon_f(z = 0, t)
  VectorXc forwardAtExit;      // epsilon_f(z = L, t)
  VectorXc backwardAtEntrance; // epsilon_b(z = 0, t)
  VectorXr storedExcitation;   // calibrated sum_{z,Delta} w g |s|^2 dz
  VectorXr fieldEnergy;        // in-domain field energy, both directions

  // Cumulative energy ledgers, one entry per sample.
  VectorXr energyInjected;
  VectorXr energyTransmitted;
  VectorXr energyBackward;
  VectorXr energyDecayed;

  Real retrievalTime = 0.0;  // t0; 0 when the schedule never rephases
  Real inputDelay = 0.0;     // lead-in transit: pulse time shift at z = 0
  OutputChannel channel = OutputChannel::ForwardAtExit;

  Real maxAbsCoherence = 0.0;
  bool weakFieldViolated = false;  // max |s| exceeded 0.1
  std::vector<std::string> warnings;
  std::vector<EventLogEntry> eventLog;

  Real time(int n) const { return n * dt; }
  int sampleIndex(Real t) const;  // nearest series index for time t

  /// Max over time of |E_in - E_trans - E_back - E_stored - E_field(- E_decayed)|
  /// relative to total injected energy.
  Real energyBalanceResidual() const;
};

}  // namespace crib
