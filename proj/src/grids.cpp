#include "crib/grids.hpp"

#include <cmath>

#include "crib/errors.hpp"

namespace crib {

std::string to_string(QuadratureKind kind) {
  switch (kind) {
    case QuadratureKind::GaussLegendre: return "gauss-legendre";
    case QuadratureKind::GaussHermite: return "gauss-hermite";
    case QuadratureKind::Uniform: return "uniform";
  }
  return "gauss-legendre";
}

QuadratureKind quadratureKindFromString(const std::string& name) {
  if (name == "gauss-legendre") return QuadratureKind::GaussLegendre;
  if (name == "gauss-hermite") return QuadratureKind::GaussHermite;
  if (name == "uniform") return QuadratureKind::Uniform;
  throw ConfigError("unknown quadrature kind '" + name + "'");
}

std::pair<VectorXr, VectorXr> gaussLegendre(int n) {
  if (n < 1) throw ConfigError("Gauss-Legendre order must be >= 1");
  VectorXr x(n), w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on the three-term recurrence.
    Real z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    Real pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        Real p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      Real dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
  if (n % 2 == 1) x[n / 2] = 0.0;  // exact center node
  return {x, w};
}

std::pair<VectorXr, VectorXr> gaussHermite(int n) {
  if (n < 1) throw ConfigError("Gauss-Hermite order must be >= 1");
  // Golub-Welsch on the symmetric tridiagonal Jacobi matrix.
  MatrixXr jacobi = MatrixXr::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    Real b = std::sqrt(i / 2.0);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXr> solver(jacobi);
  VectorXr x = solver.eigenvalues();
  VectorXr w(n);
  const Real mu0 = std::sqrt(kPi);  // integral of exp(-x^2)
  for (int i = 0; i < n; ++i) {
    Real v0 = solver.eigenvectors()(0, i);
    w[i] = mu0 * v0 * v0;
  }
  return {x, w};
}

SpatialGrid buildSpatialGrid(const GridParams& params) {
  if (params.length <= 0.0) throw ConfigError("medium length must be > 0", "grid.L");
  if (params.pointCount < 2) throw ConfigError("grid point count must be >= 2", "grid.Nz");
  if (params.leadIn < 0.0) throw ConfigError("lead-in must be >= 0", "grid.leadIn");
  if (params.leadOut < 0.0) throw ConfigError("lead-out must be >= 0", "grid.leadOut");

  SpatialGrid grid;
  grid.length = params.length;
  grid.pointCount = params.pointCount;
  grid.dz = params.length / (params.pointCount - 1);
  grid.dt = grid.dz;  // c = 1 characteristics
  grid.leadInCells = static_cast<int>(std::lround(params.leadIn / grid.dz));
  grid.leadOutCells = static_cast<int>(std::lround(params.leadOut / grid.dz));
  return grid;
}

namespace {

Real defaultSupportWidth(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Gaussian: return 5.0;
    case ProfileKind::Lorentzian: return 30.0;
    case ProfileKind::Uniform: return 1.0;
    case ProfileKind::LinearGradient: return 0.0;
  }
  return 5.0;
}

// Nodes/weights of one quadrature panel on [lo, hi].
std::pair<VectorXr, VectorXr> panel(QuadratureKind kind, int n, Real lo, Real hi) {
  if (kind == QuadratureKind::Uniform) {
    // Midpoint rule; uniform spacing keeps the discrete-class recurrence
    // time at exactly 2*pi / spacing.
    VectorXr x(n), w(n);
    Real h = (hi - lo) / n;
    for (int i = 0; i < n; ++i) {
      x[i] = lo + (i + 0.5) * h;
      w[i] = h;
    }
    return {x, w};
  }
  auto [x, w] = gaussLegendre(n);
  Real mid = 0.5 * (hi + lo);
  Real halfSpan = 0.5 * (hi - lo);
  VectorXr nodes = (x.array() * halfSpan + mid).matrix();
  VectorXr weights = (w.array() * halfSpan).matrix();
  return {nodes, weights};
}

}  // namespace

SpectralGrid buildSpectralGrid(const DetuningProfile& profile,
                               const SpectrumParams& params) {
  if (params.classCount < 1)
    throw ConfigError("spectral class count must be >= 1", "spectrum.NDelta");

  SpectralGrid grid;
  if (profile.isGradient() || params.classCount == 1) {
    // Degenerate grid: one class at the (reference) line center, weight 1.
    Real center = profile.isGradient() ? 0.0 : profile.components.front().center;
    grid.nodes = VectorXr::Constant(1, params.classCount == 1 ? center : 0.0);
    grid.weights = VectorXr::Constant(1, 1.0);
    grid.density = VectorXr::Constant(1, 1.0);
    grid.densityRenormalization = 1.0;
    return grid;
  }

  const auto& components = profile.components;
  const int perComponent = params.classCount / static_cast<int>(components.size());
  if (perComponent < 1)
    throw ConfigError("spectral class count smaller than component count",
                      "spectrum.NDelta");

  std::vector<Real> nodes, weights;
  nodes.reserve(params.classCount);
  weights.reserve(params.classCount);
  for (std::size_t ci = 0; ci < components.size(); ++ci) {
    const auto& comp = components[ci];
    Real widthMultiple = params.supportWidth > 0.0 ? params.supportWidth
                                                   : defaultSupportWidth(comp.kind);
    if (comp.kind == ProfileKind::Uniform) widthMultiple = 1.0;  // exact support
    int n = perComponent;
    if (ci == components.size() - 1)
      n = params.classCount - perComponent * (static_cast<int>(components.size()) - 1);
    auto kind = params.quadrature;
    if (kind == QuadratureKind::GaussHermite) {
      if (comp.kind != ProfileKind::Gaussian)
        throw ConfigError("gauss-hermite quadrature requires a gaussian profile",
                          "spectrum.quadrature");
      auto [x, w] = gaussHermite(n);
      for (int i = 0; i < n; ++i) {
        Real delta = comp.center + std::sqrt(2.0) * comp.width * x[i];
        // Convert the exp(-x^2) weight to a plain quadrature weight.
        Real gHere = profile.baseDensity(delta);
        if (gHere <= 0.0) continue;
        nodes.push_back(delta);
        weights.push_back(w[i] / std::sqrt(kPi) * comp.weight / gHere);
      }
    } else {
      auto [x, w] =
          panel(kind, n, comp.center - widthMultiple * comp.width,
                comp.center + widthMultiple * comp.width);
      for (int i = 0; i < n; ++i) {
        nodes.push_back(x[i]);
        weights.push_back(w[i]);
      }
    }
  }

  grid.nodes = Eigen::Map<VectorXr>(nodes.data(), static_cast<Eigen::Index>(nodes.size()));
  grid.weights =
      Eigen::Map<VectorXr>(weights.data(), static_cast<Eigen::Index>(weights.size()));
  grid.density.resize(grid.nodes.size());
  for (Eigen::Index i = 0; i < grid.nodes.size(); ++i)
    grid.density[i] = profile.baseDensity(grid.nodes[i]);

  Real mass = grid.weights.dot(grid.density);
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw ConfigError("spectral grid normalization failed", "spectrum");
  grid.weights /= mass;
  grid.densityRenormalization = mass;
  return grid;
}

std::pair<SpatialGrid, SpectralGrid> buildGrids(const GridParams& grid,
                                                const DetuningProfile& profile,
                                                const SpectrumParams& spectrum) {
  return {buildSpatialGrid(grid), buildSpectralGrid(profile, spectrum)};
}

BandMask bandMask(const SpectralGrid& grid, Real lo, Real hi) {
  if (!(lo < hi)) throw ConfigError("band requires lo < hi");
  BandMask mask;
  mask.selected = (grid.nodes.array() >= lo) && (grid.nodes.array() <= hi);
  mask.empty = !mask.selected.any();
  return mask;
}

}  // namespace crib
