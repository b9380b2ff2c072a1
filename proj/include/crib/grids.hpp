#pragma once

#include <string>
#include <utility>

#include "crib/profile.hpp"
#include "crib/types.hpp"

namespace crib {

/// Uniform spatial grid: medium on [0, L] with `pointCount` nodes, plus
/// vacuum lead-in/lead-out segments (snapped to whole cells) so pulses
/// enter and leave cleanly. The characteristics step is dt = dz / c.
struct SpatialGrid {
  Real length = 1.0;  // medium length L
  int pointCount = 2; // nodes across [0, L]
  Real dz = 1.0;
  Real dt = 1.0;      // = dz with c = 1
  int leadInCells = 0;
  int leadOutCells = 0;

  int mediumCellCount() const { return pointCount - 1; }
  int nodeCount() const { return leadInCells + pointCount + leadOutCells; }
  int entranceNode() const { return leadInCells; }
  int exitNode() const { return leadInCells + pointCount - 1; }
  Real leadIn() const { return leadInCells * dz; }
  Real leadOut() const { return leadOutCells * dz; }
  Real nodeZ(int j) const { return (j - leadInCells) * dz; }
  /// Center of medium cell c (cells live between consecutive medium nodes).
  Real cellZ(int c) const { return (c + 0.5) * dz; }
};

enum class QuadratureKind { GaussLegendre, GaussHermite, Uniform };

std::string to_string(QuadratureKind kind);
QuadratureKind quadratureKindFromString(const std::string& name);

/// Detuning-class grid: nodes, quadrature weights, and profile density,
/// normalized so that sum(weights * density) == 1.
struct SpectralGrid {
  VectorXr nodes;
  VectorXr weights;
  VectorXr density;
  Real densityRenormalization = 1.0;  // raw quadrature mass before normalization

  Eigen::Index size() const { return nodes.size(); }
  /// w_m * g(Delta_m); sums to 1.
  VectorXr classWeights() const { return weights.cwiseProduct(density); }
  /// Renormalized continuum density at `delta` (used by the d calibration).
  Real effectiveDensity(const DetuningProfile& profile, Real delta) const {
    return profile.density(delta) / densityRenormalization;
  }
};

struct GridParams {
  Real length = 1.0;
  int pointCount = 101;
  Real leadIn = 8.0;
  Real leadOut = 2.0;
};

struct SpectrumParams {
  int classCount = 1;
  QuadratureKind quadrature = QuadratureKind::GaussLegendre;
  Real supportWidth = 0.0;  // half-width multiplier; 0 = kind-specific default
};

/// Gauss-Legendre nodes/weights on [-1, 1] (Newton on the recurrence).
std::pair<VectorXr, VectorXr> gaussLegendre(int n);

/// Gauss-Hermite nodes/weights for weight exp(-x^2) (Golub-Welsch).
std::pair<VectorXr, VectorXr> gaussHermite(int n);

SpatialGrid buildSpatialGrid(const GridParams& params);
SpectralGrid buildSpectralGrid(const DetuningProfile& profile,
                               const SpectrumParams& params);

std::pair<SpatialGrid, SpectralGrid> buildGrids(const GridParams& grid,
                                                const DetuningProfile& profile,
                                                const SpectrumParams& spectrum);

/// Per-node selection mask for band-selective rephasing. Nodes are matched
/// by their as-built detuning in [lo, hi]. An empty band is flagged, not an
/// error. Throws when lo >= hi.
BandMask bandMask(const SpectralGrid& grid, Real lo, Real hi);

}  // namespace crib
