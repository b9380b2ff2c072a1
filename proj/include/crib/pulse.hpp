#pragma once

#include <string>
#include <vector>

#include "crib/types.hpp"

namespace crib {

enum class PulseKind { Gaussian, Sech, TimeBinQubit, PulseTrain };

std::string to_string(PulseKind kind);
PulseKind pulseKindFromString(const std::string& name);

/// One envelope component: amplitude * env((t - center)/width) with an
/// optional carrier offset exp(i * carrierOffset * (t - center)) used to
/// address a spectral line away from the main carrier.
struct PulseEnvelope {
  PulseKind kind = PulseKind::Gaussian;  // Gaussian or Sech
  Real center = 0.0;
  Real width = 1.0;
  Complex amplitude = 1.0;
  Real carrierOffset = 0.0;
};

struct TimeBinParams {
  Real alpha = 1.0;          // early-bin amplitude (real, >= 0)
  Real beta = 0.0;           // late-bin amplitude (real, >= 0)
  Real relativePhase = 0.0;  // phase of the late bin
  Real binSeparation = 4.0;  // center-to-center; must be >= 4 * binWidth
  Real binWidth = 1.0;
  Real center = 0.0;         // midpoint between the two bins
};

/// Input pulse shape. Unit-energy normalized at construction (measured by
/// high-order quadrature over the support window), then scaled by
/// `amplitudeScale` so runs stay inside the weak-excitation regime.
class PulseShape {
 public:
  static PulseShape gaussian(Real center, Real width, Real carrierOffset = 0.0);
  static PulseShape sech(Real center, Real width, Real carrierOffset = 0.0);
  static PulseShape timeBinQubit(const TimeBinParams& params);
  static PulseShape train(std::vector<PulseEnvelope> pulses);

  PulseKind kind() const { return kind_; }
  const std::vector<PulseEnvelope>& envelopes() const { return envelopes_; }
  const TimeBinParams& timeBin() const { return timeBin_; }

  Real amplitudeScale() const { return amplitudeScale_; }
  void setAmplitudeScale(Real scale) { amplitudeScale_ = scale; }
  void setNormalized(bool on);

  Complex sample(Real t) const;
  /// Fourier transform of sample(t): integral of sample(t) e^{i w t} dt.
  Complex spectrum(Real omega) const;

  Real supportBegin() const { return supportBegin_; }
  Real supportEnd() const { return supportEnd_; }
  /// Time by which the pulse has entered at the 3-sigma level (99.99% of
  /// its energy); retrieval triggers earlier than this draw a warning.
  Real fullyEnteredTime() const;
  /// Shortest temporal feature; the light-duration scale for schedule checks.
  Real durationMeasure() const;
  /// Energy of the normalized shape over its support (== amplitudeScale^2).
  Real energy() const;

 private:
  PulseShape() = default;
  void finalize();
  Complex rawSample(Real t) const;

  PulseKind kind_ = PulseKind::Gaussian;
  std::vector<PulseEnvelope> envelopes_;
  TimeBinParams timeBin_;
  Real normalization_ = 1.0;
  Real amplitudeScale_ = 1.0;
  bool normalized_ = true;
  Real supportBegin_ = 0.0;
  Real supportEnd_ = 0.0;
};

inline Complex samplePulse(const PulseShape& shape, Real t) {
  return shape.sample(t);
}

}  // namespace crib
