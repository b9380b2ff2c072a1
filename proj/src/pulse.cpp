#include "crib/pulse.hpp"

#include <algorithm>
#include <cmath>

#include "crib/errors.hpp"

namespace crib {

std::string to_string(PulseKind kind) {
  switch (kind) {
    case PulseKind::Gaussian: return "gaussian";
    case PulseKind::Sech: return "sech";
    case PulseKind::TimeBinQubit: return "timeBinQubit";
    case PulseKind::PulseTrain: return "pulseTrain";
  }
  return "gaussian";
}

PulseKind pulseKindFromString(const std::string& name) {
  if (name == "gaussian") return PulseKind::Gaussian;
  if (name == "sech") return PulseKind::Sech;
  if (name == "timeBinQubit") return PulseKind::TimeBinQubit;
  if (name == "pulseTrain") return PulseKind::PulseTrain;
  throw ConfigError("unknown pulse kind '" + name + "'");
}

namespace {

// Envelope support radius in widths: energy truncation < 1e-10 per kind.
Real supportRadius(PulseKind kind) { return kind == PulseKind::Sech ? 10.0 : 5.0; }

Complex envelopeSample(const PulseEnvelope& env, Real t) {
  Real u = (t - env.center) / env.width;
  Real mag;
  if (env.kind == PulseKind::Sech) {
    mag = 1.0 / std::cosh(u);
  } else {
    mag = std::exp(-0.5 * u * u);
  }
  Complex carrier = env.carrierOffset == 0.0
                        ? Complex{1.0, 0.0}
                        : std::exp(kI * env.carrierOffset * (t - env.center));
  return env.amplitude * mag * carrier;
}

// Integral of envelope(t) * exp(i omega t) dt.
Complex envelopeSpectrum(const PulseEnvelope& env, Real omega) {
  Real nu = omega + env.carrierOffset;
  Complex base;
  if (env.kind == PulseKind::Sech) {
    base = kPi * env.width / std::cosh(0.5 * kPi * env.width * nu);
  } else {
    base = env.width * std::sqrt(2.0 * kPi) *
           std::exp(-0.5 * env.width * env.width * nu * nu);
  }
  return env.amplitude * base * std::exp(kI * omega * env.center);
}

}  // namespace

PulseShape PulseShape::gaussian(Real center, Real width, Real carrierOffset) {
  if (!(width > 0.0)) throw ConfigError("pulse width must be > 0", "pulse.width");
  PulseShape shape;
  shape.kind_ = PulseKind::Gaussian;
  shape.envelopes_ = {PulseEnvelope{PulseKind::Gaussian, center, width, 1.0, carrierOffset}};
  shape.finalize();
  return shape;
}

PulseShape PulseShape::sech(Real center, Real width, Real carrierOffset) {
  if (!(width > 0.0)) throw ConfigError("pulse width must be > 0", "pulse.width");
  PulseShape shape;
  shape.kind_ = PulseKind::Sech;
  shape.envelopes_ = {PulseEnvelope{PulseKind::Sech, center, width, 1.0, carrierOffset}};
  shape.finalize();
  return shape;
}

PulseShape PulseShape::timeBinQubit(const TimeBinParams& params) {
  if (!(params.binWidth > 0.0))
    throw ConfigError("bin width must be > 0", "pulse.width");
  if (params.binSeparation < 4.0 * params.binWidth)
    throw ConfigError("time-bin separation must be >= 4x bin width",
                      "pulse.binSeparation");
  Real norm = std::hypot(params.alpha, params.beta);
  if (!(norm > 0.0)) throw ConfigError("time-bin amplitudes are both zero", "pulse");

  PulseShape shape;
  shape.kind_ = PulseKind::TimeBinQubit;
  shape.timeBin_ = params;
  shape.timeBin_.alpha /= norm;
  shape.timeBin_.beta /= norm;
  Real early = params.center - 0.5 * params.binSeparation;
  Real late = params.center + 0.5 * params.binSeparation;
  shape.envelopes_ = {
      PulseEnvelope{PulseKind::Gaussian, early, params.binWidth,
                    Complex{shape.timeBin_.alpha, 0.0}, 0.0},
      PulseEnvelope{PulseKind::Gaussian, late, params.binWidth,
                    shape.timeBin_.beta * std::exp(kI * params.relativePhase), 0.0}};
  shape.finalize();
  return shape;
}

PulseShape PulseShape::train(std::vector<PulseEnvelope> pulses) {
  if (pulses.empty()) throw ConfigError("pulse train is empty", "pulse.pulses");
  for (const auto& env : pulses)
    if (!(env.width > 0.0)) throw ConfigError("pulse width must be > 0", "pulse.pulses");
  PulseShape shape;
  shape.kind_ = PulseKind::PulseTrain;
  shape.envelopes_ = std::move(pulses);
  shape.finalize();
  return shape;
}

void PulseShape::finalize() {
  supportBegin_ = envelopes_.front().center;
  supportEnd_ = envelopes_.front().center;
  for (const auto& env : envelopes_) {
    Real radius = supportRadius(env.kind) * env.width;
    supportBegin_ = std::min(supportBegin_, env.center - radius);
    supportEnd_ = std::max(supportEnd_, env.center + radius);
  }
  // Unit-energy normalization, measured by composite Simpson over the support.
  const int n = 20000;  // even
  Real h = (supportEnd_ - supportBegin_) / n;
  Real sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    Real t = supportBegin_ + i * h;
    Real value = std::norm(rawSample(t));
    Real coef = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += coef * value;
  }
  Real energy = sum * h / 3.0;
  if (!(energy > 0.0) || !std::isfinite(energy))
    throw ConfigError("pulse energy is not finite and positive", "pulse");
  normalization_ = 1.0 / std::sqrt(energy);
}

Complex PulseShape::rawSample(Real t) const {
  Complex value = 0.0;
  for (const auto& env : envelopes_) value += envelopeSample(env, t);
  return value;
}

Complex PulseShape::sample(Real t) const {
  Real scale = amplitudeScale_ * (normalized_ ? normalization_ : 1.0);
  return scale * rawSample(t);
}

Complex PulseShape::spectrum(Real omega) const {
  Complex value = 0.0;
  for (const auto& env : envelopes_) value += envelopeSpectrum(env, omega);
  Real scale = amplitudeScale_ * (normalized_ ? normalization_ : 1.0);
  return scale * value;
}

void PulseShape::setNormalized(bool on) { normalized_ = on; }

Real PulseShape::fullyEnteredTime() const {
  Real t = envelopes_.front().center;
  for (const auto& env : envelopes_) t = std::max(t, env.center + 3.0 * env.width);
  return t;
}

Real PulseShape::durationMeasure() const {
  Real w = envelopes_.front().width;
  for (const auto& env : envelopes_) w = std::min(w, env.width);
  return w;
}

Real PulseShape::energy() const { return amplitudeScale_ * amplitudeScale_; }

}  // namespace crib
