#include "nematicon/spectrum.hpp"

#include <cmath>

namespace nematicon::spectrum {

namespace {

using SpMat = eigs::SpMat;
using Triplet = Eigen::Triplet<Real>;

void check_fresh(const groundstate::GroundState& gs) {
  if (!(gs.residual < 1e-6))
    throw StaleGroundState(
        "stationary-pair residual too large for spectral analysis");
}

// Triplets of sqrt(w) M sqrt(w)^{-1} (or M itself) for a tridiagonal block
// scale*(-L) + diag(d) placed at (row0, col0).
void add_block(std::vector<Triplet>& trip, const RadialGrid& g,
               const TriDiag& lap, Real scale, const Array& d, Index row0,
               Index col0, bool symmetrized) {
  const Index n = g.n;
  for (Index i = 0; i < n; ++i) {
    trip.emplace_back(row0 + i, col0 + i, -scale * lap.diag[i] + d[i]);
    if (i > 0) {
      Real v = -scale * lap.lower[i];
      if (symmetrized) v *= std::sqrt(g.w[i] / g.w[i - 1]);
      trip.emplace_back(row0 + i, col0 + i - 1, v);
    }
    if (i + 1 < n) {
      Real v = -scale * lap.upper[i];
      if (symmetrized) v *= std::sqrt(g.w[i] / g.w[i + 1]);
      trip.emplace_back(row0 + i, col0 + i + 1, v);
    }
  }
}

}  // namespace

Array radial_derivative(const RadialGrid& g, const Array& f) {
  const Index n = g.n;
  Array d(n);
  for (Index i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * g.h);
  d[0] = (f[1] - f[0]) / (2.0 * g.h);          // even ghost across the axis
  d[n - 1] = (-f[n - 1] - f[n - 2]) / (2.0 * g.h);  // Dirichlet ghost
  return d;
}

eigs::SpMat sector_matrix(const groundstate::GroundState& gs, Which which,
                          int k, bool symmetrized) {
  check_fresh(gs);
  if (k < 0) throw InvalidParameter("harmonic index must be nonnegative");
  const auto& g = *gs.grid;
  const Index n = g.n;
  const TriDiag lap = radial_laplacian_bands(g);
  const Array cf = Real(k) * Real(k) / (g.r * g.r);
  const Array sin2p = (2.0 * gs.phi).sin();
  const Array cos2p = (2.0 * gs.phi).cos();
  const Real q = gs.params.q, lambda = gs.params.lambda;

  std::vector<Triplet> trip;
  if (which == Which::phase) {
    const Array d = cf + 2.0 * gs.sigma - 2.0 * sin2p;
    add_block(trip, g, lap, 1.0, d, 0, 0, symmetrized);
    SpMat A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();
    return A;
  }

  const Array d11 = cf + 2.0 * gs.sigma - 2.0 * sin2p;
  const Array d22 =
      lambda * cf + 2.0 * q * cos2p + 4.0 * gs.v * gs.v * sin2p;
  add_block(trip, g, lap, 1.0, d11, 0, 0, symmetrized);
  add_block(trip, g, lap, lambda, d22, n, n, symmetrized);
  for (Index i = 0; i < n; ++i) {
    const Real c = -4.0 * gs.v[i] * cos2p[i];
    trip.emplace_back(i, n + i, c);
    trip.emplace_back(n + i, i, c);
  }
  SpMat A(2 * n, 2 * n);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  return A;
}

Mat deflation_space(const groundstate::GroundState& gs, Which which, int k) {
  const auto& g = *gs.grid;
  const Index n = g.n;
  const Array sqw = g.w.sqrt();
  const TriDiag lap = radial_laplacian_bands(g);

  if (which == Which::phase) {
    if (k != 0) return Mat();
    // The profile spans the kernel; remove it with its H1 functional.
    Mat C(n, 1);
    C.col(0) = (sqw * (gs.v - lap.apply(gs.v))).matrix();
    return C;
  }

  if (k == 0) {
    // Charge direction: second-order minimality only holds against
    // perturbations preserving the L2 mass.
    Mat C(2 * n, 1);
    C.setZero();
    C.col(0).head(n) = (sqw * gs.v).matrix();
    return C;
  }
  if (k == 1) {
    // Translation direction via the H1 functional of (v', phi').
    const Array cf1 = 1.0 / (g.r * g.r);
    const Array vp = radial_derivative(g, gs.v);
    const Array pp = radial_derivative(g, gs.phi);
    Mat C(2 * n, 1);
    C.col(0).head(n) = (sqw * (vp - lap.apply(vp) + cf1 * vp)).matrix();
    C.col(0).tail(n) = (sqw * (pp - lap.apply(pp) + cf1 * pp)).matrix();
    return C;
  }
  return Mat();
}

Report analyze(const groundstate::GroundState& gs, Which which,
               const Options& opts) {
  check_fresh(gs);
  if (opts.harmonics < 1 || opts.per_sector < 1)
    throw InvalidParameter("need at least one sector and one eigenpair");

  Report rep;
  rep.which = which;
  rep.tau = std::numeric_limits<Real>::infinity();
  for (int k = 0; k < opts.harmonics; ++k) {
    const SpMat A = sector_matrix(gs, which, k);
    if (k == 0) {
      rep.scale = eigs::gershgorin_scale(A);
      rep.kernel_tol = 1e-6 * rep.scale;
    }

    eigs::Options eopts;
    eopts.how_many = opts.per_sector;
    eopts.tol = opts.tol;
    eopts.seed = opts.seed + static_cast<uint64_t>(k);
    auto plain = eigs::lowest_symmetric(A, eopts);

    Sector sec;
    sec.k = k;
    sec.values = plain.values;
    sec.vectors = plain.vectors;
    sec.residuals = plain.residuals;

    const Mat C = deflation_space(gs, which, k);
    if (C.cols() > 0) {
      eigs::Options dopts = eopts;
      dopts.how_many = 1;
      sec.deflated_lowest = eigs::lowest_symmetric(A, dopts, C).values[0];
    } else {
      sec.deflated_lowest = sec.values[0];
    }
    rep.tau = std::min(rep.tau, sec.deflated_lowest);
    rep.sectors.push_back(std::move(sec));
  }
  rep.coercive = rep.tau > 1e-6;
  return rep;
}

}  // namespace nematicon::spectrum
