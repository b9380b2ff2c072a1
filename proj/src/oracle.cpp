#include "crib/oracle.hpp"

#include <cmath>
#include <numeric>

#include "crib/errors.hpp"

namespace crib {

namespace {

// Inverse error function: Winitzki seed polished by Newton on std::erf.
Real erfInv(Real y) {
  if (!(y > -1.0 && y < 1.0)) throw ConfigError("erfInv argument out of range");
  if (y == 0.0) return 0.0;
  const Real a = 0.147;
  Real ln1my2 = std::log(1.0 - y * y);
  Real term = 2.0 / (kPi * a) + 0.5 * ln1my2;
  Real x = std::copysign(std::sqrt(std::sqrt(term * term - ln1my2 / a) - term), y);
  for (int i = 0; i < 4; ++i)
    x -= (std::erf(x) - y) * std::sqrt(kPi) / 2.0 * std::exp(x * x);
  return x;
}

int coprimeStride(int n) {
  for (int q : {5, 7, 11, 13, 3, 2}) {
    if (q < n && std::gcd(q, n) == 1) return q;
  }
  return 1;
}

}  // namespace

OracleSystem buildOracle(const OracleParams& params) {
  if (params.atomCount < 1) throw ConfigError("oracle needs at least one atom", "oracle.N");
  if (params.modeCount < 2 || params.modeCount % 2 != 0)
    throw ConfigError("oracle mode count must be even and >= 2", "oracle.M");
  if (!(params.boxLength > 2.0 * params.mediumLength))
    throw ConfigError("oracle box must be larger than the medium", "oracle.LBox");
  if (!(params.gammaInh > 0.0)) throw ConfigError("oracle gammaInh must be > 0");

  OracleSystem system;
  system.params = params;

  const int N = params.atomCount;
  const int M = params.modeCount;
  const Real dk = 2.0 * kPi / params.boxLength;
  // Snap the carrier to the mode lattice.
  const Real k0 = std::max<Real>(1.0, std::round(params.k0 / dk)) * dk;

  // Atom positions. Even N: pairs a quarter carrier-wavelength apart sharing
  // one detuning class, so the 2 k0 z_n backscatter sum cancels pairwise and
  // stays cancelled as the classes dephase. Odd N: plain lattice.
  system.atomPositions.resize(N);
  system.atomDetunings.resize(N);
  if (N % 2 == 0) {
    const int sites = N / 2;
    const Real pitch = params.mediumLength / sites;
    const Real pairGap = kPi / (2.0 * k0);
    const int stride = coprimeStride(sites);
    for (int i = 0; i < sites; ++i) {
      Real center = (i + 0.5) * pitch;
      system.atomPositions[2 * i] = center - 0.5 * pairGap;
      system.atomPositions[2 * i + 1] = center + 0.5 * pairGap;
      int rank = (stride * i + 1) % sites;
      Real p = (rank + 0.5) / sites;
      Real detuning = params.gammaInh * std::sqrt(2.0) * erfInv(2.0 * p - 1.0);
      system.atomDetunings[2 * i] = detuning;
      system.atomDetunings[2 * i + 1] = detuning;
    }
  } else {
    const Real pitch = params.mediumLength / N;
    const int stride = coprimeStride(N);
    for (int i = 0; i < N; ++i) {
      system.atomPositions[i] = (i + 0.5) * pitch;
      int rank = N == 1 ? 0 : (stride * i + 1) % N;
      Real p = (rank + 0.5) / N;
      system.atomDetunings[i] = params.gammaInh * std::sqrt(2.0) * erfInv(2.0 * p - 1.0);
    }
  }

  // Mirror-symmetric bands: backward modes are exact negatives of forward.
  system.modeK.resize(M);
  const int half = M / 2;
  for (int j = 0; j < half; ++j) {
    Real k = k0 + (j - half / 2) * dk;
    system.modeK[j] = k;
    system.modeK[half + j] = -k;
  }

  if (params.coupling) {
    system.coupling = *params.coupling;
  } else {
    // d = 2 pi G^2 Lbox N g(0): two-sided radiative width against the
    // inhomogeneous density at line center.
    Real g0 = 1.0 / (params.gammaInh * std::sqrt(2.0 * kPi));
    system.coupling =
        std::sqrt(params.effectiveDepth / (2.0 * kPi * params.boxLength * N * g0));
  }
  if (!std::isfinite(system.coupling))
    throw ConfigError("oracle coupling is not finite");

  const int dim = N + M;
  system.hamiltonian = MatrixXc::Zero(dim, dim);
  for (int n = 0; n < N; ++n)
    system.hamiltonian(n, n) = -system.atomDetunings[n];  // rotating frame at omega0
  for (int p = 0; p < M; ++p)
    system.hamiltonian(N + p, N + p) = std::abs(system.modeK[p]) - k0;
  for (int n = 0; n < N; ++n) {
    for (int p = 0; p < M; ++p) {
      Complex coupling =
          -kI * system.coupling * std::exp(kI * system.modeK[p] * system.atomPositions[n]);
      system.hamiltonian(n, N + p) = coupling;
      system.hamiltonian(N + p, n) = std::conj(coupling);
    }
  }
  if ((system.hamiltonian - system.hamiltonian.adjoint()).cwiseAbs().maxCoeff() != 0.0)
    throw NumericalError("oracle Hamiltonian is not Hermitian");

  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(system.hamiltonian);
  if (solver.info() != Eigen::Success)
    throw NumericalError("oracle eigendecomposition failed");
  system.eigenvalues = solver.eigenvalues();
  system.eigenvectors = solver.eigenvectors();

  system.params.k0 = k0;
  return system;
}

OracleState inputPhotonState(const OracleSystem& system, const PulseShape& shape,
                             Real arrivalShift) {
  const int N = system.atomCount();
  const int half = system.forwardModeCount();
  OracleState state;
  state.amplitudes = VectorXc::Zero(system.dimension());
  for (int j = 0; j < half; ++j) {
    Real delta = system.modeK[j] - system.params.k0;
    // Divide by i so the reconstructed envelope at z = 0 is a positive
    // multiple of shape(t - arrivalShift).
    state.amplitudes[N + j] =
        shape.spectrum(delta) * std::exp(kI * delta * arrivalShift) / kI;
  }
  Real norm = state.amplitudes.norm();
  if (!(norm > 0.0)) throw ConfigError("input photon state has zero norm");
  state.amplitudes /= norm;
  state.t = 0.0;
  return state;
}

OracleState evolve(const OracleState& state, const OracleSystem& system, Real tau) {
  OracleState out;
  VectorXc modal = system.eigenvectors.adjoint() * state.amplitudes;
  modal.array() *= (-kI * tau * system.eigenvalues.array()).exp();
  out.amplitudes = system.eigenvectors * modal;
  out.t = state.t + tau;
  Real drift = std::abs(out.amplitudes.norm() - state.amplitudes.norm());
  if (drift > 1e-9 * std::max<Real>(1.0, std::abs(tau)))
    throw NumericalError("oracle norm drift beyond bound");
  return out;
}

ControlledOracle applyCribControl(const OracleState& state, const OracleSystem& system) {
  ControlledOracle result;
  result.system = system;
  for (int n = 0; n < system.atomCount(); ++n)
    result.system.hamiltonian(n, n) = system.atomDetunings[n];  // Delta_n -> -Delta_n
  result.system.atomDetunings = -system.atomDetunings;
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(result.system.hamiltonian);
  if (solver.info() != Eigen::Success)
    throw NumericalError("oracle eigendecomposition failed");
  result.system.eigenvalues = solver.eigenvalues();
  result.system.eigenvectors = solver.eigenvectors();

  result.state = state;
  for (int n = 0; n < system.atomCount(); ++n) {
    Complex phase = std::exp(-2.0 * kI * system.params.k0 * system.atomPositions[n]);
    result.state.amplitudes[n] *= phase;
  }
  return result;
}

Real atomicPopulation(const OracleSystem& system, const OracleState& state) {
  return state.amplitudes.head(system.atomCount()).squaredNorm();
}

Real forwardPopulation(const OracleSystem& system, const OracleState& state) {
  return state.amplitudes.segment(system.atomCount(), system.forwardModeCount())
      .squaredNorm();
}

Real backwardPopulation(const OracleSystem& system, const OracleState& state) {
  return state.amplitudes.tail(system.forwardModeCount()).squaredNorm();
}

Complex photonEnvelope(const OracleSystem& system, const OracleState& state,
                       Real z, Band band) {
  const int N = system.atomCount();
  const int half = system.forwardModeCount();
  const int begin = band == Band::Forward ? 0 : half;
  const Real carrier = band == Band::Forward ? -system.params.k0 : +system.params.k0;
  Complex sum = 0.0;
  for (int j = 0; j < half; ++j) {
    Real k = system.modeK[begin + j];
    sum += state.amplitudes[N + begin + j] * std::exp(kI * (k + carrier) * z);
  }
  return kI * system.coupling * sum;
}

VectorXc envelopeSeries(const OracleSystem& system, const OracleState& state,
                        Band band, Real begin, Real dt, int count) {
  const int N = system.atomCount();
  const int half = system.forwardModeCount();
  const int offset = band == Band::Forward ? N : N + half;
  // At z = 0 the envelope is i G times the plain band sum; propagate in the
  // eigenbasis and resum per sample.
  VectorXc modal = system.eigenvectors.adjoint() * state.amplitudes;
  Eigen::RowVectorXcd bandRow =
      system.eigenvectors.middleRows(offset, half).colwise().sum();
  VectorXc series(count);
  for (int i = 0; i < count; ++i) {
    Real tau = begin + i * dt - state.t;
    VectorXc phased = (-kI * tau * system.eigenvalues.array()).exp() * modal.array();
    series[i] = kI * system.coupling * (bandRow * phased)(0, 0);
  }
  return series;
}

}  // namespace crib
