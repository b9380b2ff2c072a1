#pragma once

#include <optional>

#include "crib/pulse.hpp"
#include "crib/types.hpp"

namespace crib {

/// Parameters of the exact single-excitation model: N atoms on a lattice
/// inside [0, mediumLength], detunings at Gaussian quantiles of width
/// gammaInh, and M field modes split into mirror-symmetric bands around
/// +-k0 with uniform spacing 2*pi/boxLength.
struct OracleParams {
  int atomCount = 20;
  int modeCount = 128;        // total, both bands; multiple of 4
  Real boxLength = 40.0;
  Real mediumLength = 1.0;
  Real k0 = 2.0 * kPi;        // carrier wavenumber (= omega0 with c = 1)
  Real gammaInh = 2.0;        // detuning distribution std deviation
  Real effectiveDepth = 3.0;  // target d; sets the atom-mode coupling
  std::optional<Real> coupling;  // explicit coupling overrides effectiveDepth
};

struct OracleSystem {
  OracleParams params;
  VectorXr atomPositions;
  VectorXr atomDetunings;
  VectorXr modeK;        // forward band first, then backward = -forward
  Real coupling = 0.0;   // uniform |atom-mode coupling| (dipole * g_k)
  MatrixXc hamiltonian;  // (N + M) single-excitation sector, rotating frame

  // Cached eigendecomposition for exact unitary propagation.
  VectorXr eigenvalues;
  MatrixXc eigenvectors;

  int dimension() const { return static_cast<int>(hamiltonian.rows()); }
  int atomCount() const { return static_cast<int>(atomPositions.size()); }
  int forwardModeCount() const { return static_cast<int>(modeK.size()) / 2; }
};

struct OracleState {
  VectorXc amplitudes;  // atoms, then modes
  Real t = 0.0;
};

OracleSystem buildOracle(const OracleParams& params);

/// Photon wavepacket in the forward band whose free-field envelope at z = 0
/// is shape(t - arrivalShift); normalized to unit norm.
OracleState inputPhotonState(const OracleSystem& system, const PulseShape& shape,
                             Real arrivalShift);

/// Exact unitary propagation by tau via the cached eigendecomposition.
/// Throws if the norm drifts beyond 1e-9 * max(tau, 1).
OracleState evolve(const OracleState& state, const OracleSystem& system, Real tau);

struct ControlledOracle {
  OracleState state;
  OracleSystem system;
};

/// CRIB control: detunings flip sign (new Hamiltonian) and each excited-atom
/// amplitude picks up the backward-steering phase exp(-2 i k0 z_n) that the
/// per-atom ground-state phase exp(+2 i k0 z_n) induces in this sector.
ControlledOracle applyCribControl(const OracleState& state, const OracleSystem& system);

Real atomicPopulation(const OracleSystem& system, const OracleState& state);
Real forwardPopulation(const OracleSystem& system, const OracleState& state);
Real backwardPopulation(const OracleSystem& system, const OracleState& state);

enum class Band { Forward, Backward };

/// Slowly varying field envelope reconstructed from the mode sum at z.
Complex photonEnvelope(const OracleSystem& system, const OracleState& state,
                       Real z, Band band);

/// Envelope time series at z = 0 for sample times t_n = begin + n * dt.
VectorXc envelopeSeries(const OracleSystem& system, const OracleState& state,
                        Band band, Real begin, Real dt, int count);

}  // namespace crib
