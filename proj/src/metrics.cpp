#include "crib/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "crib/errors.hpp"

namespace crib {

namespace {

const VectorXc& channelSeries(const RunRecord& record) {
  return record.channel == OutputChannel::BackwardAtEntrance ? record.backwardAtEntrance
                                                             : record.forwardAtExit;
}

int retrievalIndex(const RunRecord& record) {
  return record.retrievalTime > 0.0 ? record.sampleIndex(record.retrievalTime) : 0;
}

Real windowEnergy(const VectorXc& series, Real dt, int begin, int end) {
  Real sum = 0.0;
  for (int n = begin; n < end; ++n) sum += std::norm(series[n]);
  return sum * dt;
}

Real inputEnergy(const RunRecord& record) {
  int n0 = retrievalIndex(record);
  int end = n0 > 0 ? n0 + 1 : record.steps + 1;
  return windowEnergy(record.forwardAtEntrance, record.dt, 0, end);
}

}  // namespace

Real efficiency(const RunRecord& record) {
  Real in = inputEnergy(record);
  if (!(in > 0.0)) throw ConfigError("efficiency undefined: zero input energy");
  int n0 = retrievalIndex(record);
  Real out = windowEnergy(channelSeries(record), record.dt, n0, record.steps + 1);
  return out / in;
}

Real transmission(const RunRecord& record) {
  Real in = inputEnergy(record);
  if (!(in > 0.0)) throw ConfigError("transmission undefined: zero input energy");
  int n0 = retrievalIndex(record);
  int end = n0 > 0 ? n0 + 1 : record.steps + 1;
  Real out = windowEnergy(record.forwardAtExit, record.dt, 0, end);
  return out / in;
}

OverlapResult modeOverlap(const VectorXc& reference, const VectorXc& output) {
  if (reference.size() != output.size())
    throw ConfigError("mode overlap requires series of equal length");
  Real refNorm = reference.squaredNorm();
  Real outNorm = output.squaredNorm();
  if (!(refNorm > 0.0) || !(outNorm > 0.0))
    throw ConfigError("mode overlap undefined for a zero-energy series");
  Complex inner = reference.dot(output);  // conjugates the reference
  OverlapResult result;
  result.fidelity = std::norm(inner) / (refNorm * outNorm);
  result.phase = std::arg(inner);
  return result;
}

VectorXc echoWindowSeries(const RunRecord& record) {
  int n0 = retrievalIndex(record);
  return channelSeries(record).segment(n0, record.steps + 1 - n0);
}

VectorXc mirroredInputReference(const RunRecord& record, bool conjugate) {
  int n0 = retrievalIndex(record);
  int count = record.steps + 1 - n0;
  VectorXc reference = VectorXc::Zero(count);
  for (int i = 0; i < count; ++i) {
    int mirror = 2 * n0 - (n0 + i);  // index of 2 t0 - t
    if (mirror < 0) break;           // input is empty before t = 0
    Complex v = record.forwardAtEntrance[mirror];
    reference[i] = conjugate ? std::conj(v) : v;
  }
  return reference;
}

OverlapResult echoOverlap(const RunRecord& record, bool conjugate) {
  return modeOverlap(mirroredInputReference(record, conjugate),
                     echoWindowSeries(record));
}

Real peakTime(const VectorXc& series, Real dt, int begin, int end) {
  if (end < 0) end = static_cast<int>(series.size());
  int best = begin;
  Real bestVal = -1.0;
  for (int n = begin; n < end; ++n) {
    Real v = std::norm(series[n]);
    if (v > bestVal) {
      bestVal = v;
      best = n;
    }
  }
  if (best <= begin || best >= end - 1) return best * dt;
  Real ym = std::norm(series[best - 1]);
  Real y0 = std::norm(series[best]);
  Real yp = std::norm(series[best + 1]);
  Real denom = ym - 2.0 * y0 + yp;
  Real shift = denom != 0.0 ? 0.5 * (ym - yp) / denom : 0.0;
  return (best + shift) * dt;
}

namespace {

std::vector<int> detectPeaks(const VectorXc& series, int begin, int end,
                             Real threshold) {
  Real maxVal = 0.0;
  for (int n = begin; n < end; ++n) maxVal = std::max(maxVal, std::norm(series[n]));
  std::vector<int> peaks;
  for (int n = std::max(begin + 1, 1); n < end - 1; ++n) {
    Real v = std::norm(series[n]);
    if (v < threshold * maxVal) continue;
    if (v >= std::norm(series[n - 1]) && v > std::norm(series[n + 1])) {
      // Merge plateau/adjacent detections into one peak.
      if (!peaks.empty() && (n - peaks.back()) * 1.0 < 3) continue;
      peaks.push_back(n);
    }
  }
  return peaks;
}

}  // namespace

QubitResult timebinFidelity(const RunRecord& record, const TimeBinParams& params) {
  if (record.retrievalTime <= 0.0)
    throw ConfigError("time-bin fidelity requires a retrieval trigger");
  Real t0 = record.retrievalTime;
  Real earlyCenter = record.inputDelay + params.center - 0.5 * params.binSeparation;
  Real lateCenter = record.inputDelay + params.center + 0.5 * params.binSeparation;
  Real halfWindow = 0.5 * params.binSeparation;

  auto projectBin = [&](Real inputCenter) -> Complex {
    Real mirroredCenter = 2.0 * t0 - inputCenter;
    int lo = record.sampleIndex(mirroredCenter - halfWindow);
    int hi = record.sampleIndex(mirroredCenter + halfWindow);
    if (lo >= hi || hi > record.steps)
      throw ConfigError("time-bin windows unresolvable in the output record");
    VectorXc mode(hi - lo + 1);
    for (int n = lo; n <= hi; ++n) {
      Real u = (record.time(n) - mirroredCenter) / params.binWidth;
      mode[n - lo] = std::exp(-0.5 * u * u);
    }
    mode.normalize();
    return mode.dot(channelSeries(record).segment(lo, hi - lo + 1));
  };

  QubitResult result;
  result.lateAmplitude = projectBin(earlyCenter);  // early bin returns late
  result.earlyAmplitude = projectBin(lateCenter);

  int n0 = retrievalIndex(record);
  Real echoEnergy = channelSeries(record).segment(n0, record.steps + 1 - n0).squaredNorm();
  Real captured = std::norm(result.earlyAmplitude) + std::norm(result.lateAmplitude);
  result.leakage = echoEnergy > 0.0 ? 1.0 - captured / echoEnergy : 1.0;

  // Logical amplitudes: the early input bin is the one projected at the
  // mirrored (late) time.
  Complex outEarly = result.lateAmplitude;
  Complex outLate = result.earlyAmplitude;
  Complex inEarly{params.alpha, 0.0};
  Complex inLate = params.beta * std::exp(kI * params.relativePhase);
  Real outNorm = std::norm(outEarly) + std::norm(outLate);
  Real inNorm = std::norm(inEarly) + std::norm(inLate);
  if (!(outNorm > 0.0))
    throw ConfigError("time-bin fidelity undefined: no echo energy in the bins");
  Complex overlap = std::conj(inEarly) * outEarly + std::conj(inLate) * outLate;
  result.fidelity = std::norm(overlap) / (inNorm * outNorm);
  return result;
}

OrderingReport orderingCheck(const RunRecord& record, int expectedPulseCount) {
  if (expectedPulseCount < 1)
    throw ConfigError("ordering check needs at least one expected pulse");
  const Real threshold = 0.05;
  int n0 = retrievalIndex(record);

  auto inputPeaks = detectPeaks(record.forwardAtEntrance, 0, n0 + 1, threshold);
  auto outputPeaks = detectPeaks(channelSeries(record), n0, record.steps + 1, threshold);
  if (static_cast<int>(inputPeaks.size()) != expectedPulseCount ||
      static_cast<int>(outputPeaks.size()) != expectedPulseCount)
    throw ConfigError("ordering check: pulses unresolvable in the record");

  OrderingReport report;
  auto refine = [&](const VectorXc& series, int index) {
    int lo = std::max(0, index - 3);
    int hi = std::min<int>(static_cast<int>(series.size()), index + 4);
    return peakTime(series, record.dt, lo, hi);
  };
  for (int p : inputPeaks) report.inputPeakTimes.push_back(refine(record.forwardAtEntrance, p));
  for (int p : outputPeaks) report.outputPeakTimes.push_back(refine(channelSeries(record), p));

  // Strict reversal: the j-th output peak must mirror the (K-1-j)-th input.
  const int count = expectedPulseCount;
  Real t0 = record.retrievalTime;
  report.strictlyReversed = true;
  for (int j = 0; j < count; ++j) {
    Real mirrored = 2.0 * t0 - report.outputPeakTimes[j];
    int nearest = 0;
    Real bestDist = std::abs(mirrored - report.inputPeakTimes[0]);
    for (int k = 1; k < count; ++k) {
      Real dist = std::abs(mirrored - report.inputPeakTimes[k]);
      if (dist < bestDist) {
        bestDist = dist;
        nearest = k;
      }
    }
    if (nearest != count - 1 - j) report.strictlyReversed = false;
  }

  // Per-pulse efficiency: segment boundaries at midpoints between peaks.
  const VectorXc& out = channelSeries(record);
  const VectorXc& in = record.forwardAtEntrance;
  std::vector<int> outBounds{n0}, inBounds{0};
  for (int j = 0; j + 1 < count; ++j) {
    outBounds.push_back(record.sampleIndex(
        0.5 * (report.outputPeakTimes[j] + report.outputPeakTimes[j + 1])));
    inBounds.push_back(record.sampleIndex(
        0.5 * (report.inputPeakTimes[j] + report.inputPeakTimes[j + 1])));
  }
  outBounds.push_back(record.steps + 1);
  inBounds.push_back(n0 + 1);
  for (int j = 0; j < count; ++j) {
    Real eOut = windowEnergy(out, record.dt, outBounds[j], outBounds[j + 1]);
    int k = count - 1 - j;  // matched input pulse
    Real eIn = windowEnergy(in, record.dt, inBounds[k], inBounds[k + 1]);
    report.perPulseEfficiency.push_back(eIn > 0.0 ? eOut / eIn : 0.0);
  }
  return report;
}

Real energyBalance(const RunRecord& record) { return record.energyBalanceResidual(); }

MetricsReport computeMetrics(const RunRecord& record,
                             const std::optional<TimeBinParams>& timeBin,
                             int trainPulseCount) {
  MetricsReport report;
  report.efficiency = efficiency(record);
  report.transmission = transmission(record);
  report.energyBalanceResidual = record.energyBalanceResidual();
  report.maxAbsCoherence = record.maxAbsCoherence;
  report.weakFieldViolated = record.weakFieldViolated;

  Real injected = record.energyInjected[record.steps];
  report.decayedFraction =
      injected > 0.0 ? record.energyDecayed[record.steps] / injected : 0.0;

  VectorXc echo = echoWindowSeries(record);
  if (echo.squaredNorm() > 0.0) {
    int n0 = retrievalIndex(record);
    report.echoPeakTime = peakTime(channelSeries(record), record.dt, n0, record.steps + 1);
    auto plain = echoOverlap(record, false);
    auto conj = echoOverlap(record, true);
    report.modeOverlapFidelity = plain.fidelity;
    report.globalPhase = plain.phase;
    report.modeOverlapFidelityConjugate = conj.fidelity;
    report.globalPhaseConjugate = conj.phase;
  }
  if (timeBin) report.qubit = timebinFidelity(record, *timeBin);
  if (trainPulseCount > 1) report.ordering = orderingCheck(record, trainPulseCount);
  return report;
}

}  // namespace crib
