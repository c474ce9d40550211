#include "nematicon/groundstate.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>

namespace nematicon::groundstate {

namespace {

using SpMat = Eigen::SparseMatrix<Real>;
using Triplet = Eigen::Triplet<Real>;

Array gaussian_start(const RadialGrid& g, Real width, Real a) {
  Array u = (-(g.r * g.r) / (2.0 * width * width)).exp();
  const Real norm2 = (g.w * u * u).sum();
  return u * std::sqrt(a / norm2);
}

// Residuals of the stationary pair at (v, phi, sigma).
struct PairResidual {
  Array beam, medium;
  Real sup;
};

PairResidual pair_residual(const TriDiag& lap,
                           const Array& v, const Array& phi, Real sigma,
                           const energy::Params& p) {
  const Array sin2p = (2.0 * phi).sin();
  const Array cos2p = (2.0 * phi).cos();
  PairResidual r;
  r.beam = -lap.apply(v) + 2.0 * sigma * v - 2.0 * v * sin2p;
  r.medium = -p.lambda * lap.apply(phi) + p.q * sin2p - 2.0 * v * v * cos2p;
  r.sup = std::max(r.beam.abs().maxCoeff(), r.medium.abs().maxCoeff());
  return r;
}

// One Newton step of the pinned-charge KKT system
//   [ -L + 2s - 2sin2p   -4v cos2p        2v ] [dv]     [F1]
//   [ -4v cos2p          -lL + 2q cos2p
//                          + 4v^2 sin2p    0 ] [dp]  = -[F2]
//   [ 2(w v)^T            0                0 ] [ds]     [F3]
void kkt_step(const RadialGrid& g, const TriDiag& lap, Array& v, Array& phi,
              Real& sigma, Real a, const energy::Params& p) {
  const Index n = g.n;
  const Array sin2p = (2.0 * phi).sin();
  const Array cos2p = (2.0 * phi).cos();

  std::vector<Triplet> trip;
  trip.reserve(static_cast<size_t>(10 * n));
  auto add_band = [&](Index row0, Index col0, const TriDiag& t, Real scale,
                      const Array* diag_extra) {
    for (Index i = 0; i < n; ++i) {
      Real d = scale * t.diag[i] + (diag_extra ? (*diag_extra)[i] : 0.0);
      trip.emplace_back(row0 + i, col0 + i, d);
      if (i > 0) trip.emplace_back(row0 + i, col0 + i - 1, scale * t.lower[i]);
      if (i + 1 < n) trip.emplace_back(row0 + i, col0 + i + 1, scale * t.upper[i]);
    }
  };

  const Array d11 = 2.0 * sigma - 2.0 * sin2p;
  add_band(0, 0, lap, -1.0, &d11);
  const Array d22 = 2.0 * p.q * cos2p + 4.0 * v * v * sin2p;
  add_band(n, n, lap, -p.lambda, &d22);
  for (Index i = 0; i < n; ++i) {
    const Real c = -4.0 * v[i] * cos2p[i];
    trip.emplace_back(i, n + i, c);
    trip.emplace_back(n + i, i, c);
    trip.emplace_back(i, 2 * n, 2.0 * v[i]);
    trip.emplace_back(2 * n, i, 2.0 * g.w[i] * v[i]);
  }

  SpMat J(2 * n + 1, 2 * n + 1);
  J.setFromTriplets(trip.begin(), trip.end());
  J.makeCompressed();

  const Array sin2p_ = sin2p, cos2p_ = cos2p;
  Vec F(2 * n + 1);
  F.head(n) = (-lap.apply(v) + 2.0 * sigma * v - 2.0 * v * sin2p_).matrix();
  F.segment(n, n) =
      (-p.lambda * lap.apply(phi) + p.q * sin2p_ - 2.0 * v * v * cos2p_).matrix();
  F[2 * n] = (g.w * v * v).sum() - a;

  Eigen::SparseLU<SpMat> lu;
  lu.analyzePattern(J);
  lu.factorize(J);
  if (lu.info() != Eigen::Success)
    throw EigenFailure("stationary-system Newton factorization failed");
  Vec delta = lu.solve(-F);

  v += delta.head(n).array();
  phi += delta.segment(n, n).array();
  sigma += delta[2 * n];
}

}  // namespace

Real extract_sigma(const RadialGrid& g, const Array& v, const Array& phi) {
  const Array sin2p = (2.0 * phi).sin();
  const Real num = -grad_inner(g, v, v) + 2.0 * l2_inner(g, v * v, sin2p);
  return 0.5 * num / l2_inner(g, v, v);
}

Array beam_residual(const RadialGrid& g, const Array& v, const Array& phi,
                    Real sigma) {
  return -radial_laplacian(g, v) + 2.0 * sigma * v - 2.0 * v * (2.0 * phi).sin();
}

void polish(GroundState& gs, int max_iter, Real tol) {
  const auto& g = *gs.grid;
  const TriDiag lap = radial_laplacian_bands(g);
  Array v = gs.v, phi = gs.phi;
  Real sigma = gs.sigma;

  Real best = pair_residual(lap, v, phi, sigma, gs.params).sup;
  int done = 0;
  for (int iter = 0; iter < max_iter && best >= tol; ++iter) {
    Array v_try = v, phi_try = phi;
    Real sigma_try = sigma;
    kkt_step(g, lap, v_try, phi_try, sigma_try, gs.a, gs.params);
    Real res = pair_residual(lap, v_try, phi_try, sigma_try, gs.params).sup;
    // Fall back to damped steps if the full step overshoots.
    Array dv = v_try - v, dp = phi_try - phi;
    Real ds = sigma_try - sigma, t = 1.0;
    for (int back = 0; back < 4 && res > best; ++back) {
      t *= 0.5;
      v_try = v + t * dv;
      phi_try = phi + t * dp;
      sigma_try = sigma + t * ds;
      res = pair_residual(lap, v_try, phi_try, sigma_try, gs.params).sup;
    }
    if (res >= best && iter > 0) break;
    v = v_try;
    phi = phi_try;
    sigma = sigma_try;
    best = res;
    ++done;
  }

  gs.v = std::move(v);
  gs.phi = std::move(phi);
  gs.sigma = sigma;
  gs.residual = best;
  gs.iterations += done;
  gs.report = energy::evaluate(RadialField(gs.grid, gs.v),
                               RadialField(gs.grid, gs.phi), gs.params);
}

ChargeResult minimize_charge(const RadialGridPtr& grid, Real a,
                             const energy::Params& p, FlowOptions opts) {
  p.validate();
  if (!(a > 0)) throw InvalidParameter("charge a must be positive");

  const auto& g = *grid;
  const TriDiag lap = radial_laplacian_bands(g);
  // Preconditioner (I - Lap/2)^{-1}: inverse of the linear part of the
  // gradient shifted to stay positive definite.
  const TriDiag pre = lap.shifted(1.0, -0.5);
  const Real tau =
      opts.step > 0 ? opts.step : (opts.precondition ? 0.6 : 0.4 * g.h * g.h);

  Array u = opts.initial ? *opts.initial : gaussian_start(g, opts.width, a);
  u *= std::sqrt(a / (g.w * u * u).sum());
  const Real sup0 = u.abs().maxCoeff();

  ChargeResult out;
  angle::Options aopts = opts.angle_opts;
  Array theta = Array::Zero(g.n);
  Real E_best = std::numeric_limits<Real>::infinity();
  int last_improve = 0;
  Real res = std::numeric_limits<Real>::infinity();

  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    auto asol = angle::solve_intensity(grid, u * u, p, aopts, &theta);
    theta = asol.theta.values;

    const Real sigma = extract_sigma(g, u, theta);
    const Array R = beam_residual(g, u, theta, sigma);
    res = R.abs().maxCoeff();
    if (res < opts.flow_tol) break;

    // Descend along the sigma-shifted gradient grad_E + sigma u = R/2. It
    // vanishes at the stationary pair, so the rescale cannot displace the
    // fixed point through the preconditioner.
    const Array dir = 0.5 * R;
    u -= tau * (opts.precondition ? pre.solve(dir) : dir);
    u *= std::sqrt(a / (g.w * u * u).sum());

    if (u.abs().maxCoeff() < opts.vanish_floor * sup0) {
      out.diag.vanished = true;
      out.diag.verdict = "no-ground-state";
      out.diag.flow_iterations = iter;
      out.diag.sup_ratio = u.abs().maxCoeff() / sup0;
      return out;
    }

    const Real E = energy::evaluate(RadialField(grid, u), RadialField(grid, theta), p).E;
    if (!std::isfinite(E_best) ||
        E < E_best - 1e-13 * std::max(1.0, std::abs(E_best))) {
      E_best = E;
      last_improve = iter;
    } else if (iter - last_improve > 50) {
      throw StepTooLarge("flow energy no longer decreasing; halve the step",
                         tau / 2);
    }
  }
  out.diag.flow_iterations = iter;
  out.diag.flow_residual = res;

  GroundState gs;
  gs.grid = grid;
  gs.v = u;
  gs.phi = theta;
  gs.sigma = extract_sigma(g, u, theta);
  gs.a = a;
  gs.params = p;
  gs.solver = "charge-flow";
  gs.iterations = iter;
  polish(gs, opts.polish_max, opts.tol);

  out.diag.polish_iterations = gs.iterations - iter;
  out.diag.residual = gs.residual;
  out.diag.sigma = gs.sigma;
  out.diag.J = gs.report.E;
  out.diag.sup_ratio = gs.v.abs().maxCoeff() / sup0;

  if (gs.residual > opts.tol) {
    out.diag.verdict = "no-convergence";
    return out;
  }
  // Spread near-zero-energy stationary states on the truncated disk signal a
  // subcritical charge: a true minimizer has J < 0 and sigma > 0.
  const Real j_floor = 1e-10 * std::max(1.0, std::abs(gs.report.E_plus));
  if (!(gs.report.E < -j_floor) || !(gs.sigma > 1e-9) || !(gs.sigma < 1.0)) {
    out.diag.verdict = "no-ground-state";
    return out;
  }
  out.diag.verdict = "ground-state";
  out.state = std::move(gs);
  return out;
}

Threshold locate_threshold(const RadialGridPtr& grid, const energy::Params& p,
                           Real a_lo, Real a_hi, Real tol_a, FlowOptions opts) {
  if (!(a_lo > 0) || !(a_hi > a_lo))
    throw InvalidParameter("threshold bracket needs 0 < a_lo < a_hi");
  if (!(tol_a > 0)) throw InvalidParameter("tol_a must be positive");

  auto exists = [&](Real a) {
    return minimize_charge(grid, a, p, opts).diag.verdict == "ground-state";
  };

  Threshold th;
  th.evaluations = 2;
  if (exists(a_lo))
    throw BracketError("ground state already exists at the lower bracket edge");
  if (!exists(a_hi))
    throw BracketError("no ground state at the upper bracket edge");

  Real lo = a_lo, hi = a_hi;
  while (hi - lo > tol_a) {
    const Real mid = 0.5 * (lo + hi);
    ++th.evaluations;
    (exists(mid) ? hi : lo) = mid;
  }
  th.lo = lo;
  th.hi = hi;
  th.a0 = 0.5 * (lo + hi);
  return th;
}

ChargeSweep sweep_charge(const RadialGridPtr& grid, const energy::Params& p,
                         const std::vector<Real>& charges, FlowOptions opts) {
  for (size_t i = 0; i + 1 < charges.size(); ++i)
    if (!(charges[i] < charges[i + 1]))
      throw InvalidParameter("charge sweep list must be increasing");

  ChargeSweep sweep;
  Array warm;
  for (Real a : charges) {
    FlowOptions o = opts;
    if (warm.size() > 0) o.initial = &warm;
    SweepPoint pt;
    pt.a = a;
    try {
      auto res = minimize_charge(grid, a, p, o);
      pt.verdict = res.diag.verdict;
      if (res.state) {
        pt.ok = true;
        pt.sigma = res.state->sigma;
        pt.J = res.state->report.E;
        pt.residual = res.state->residual;
        warm = res.state->v;
      }
    } catch (const Error& e) {
      pt.verdict = std::string("error: ") + e.what();
    }
    sweep.points.push_back(std::move(pt));
  }
  for (size_t i = 0; i + 1 < sweep.points.size(); ++i) {
    const auto& p0 = sweep.points[i];
    const auto& p1 = sweep.points[i + 1];
    if (p0.ok && p1.ok)
      sweep.dini_quotients.push_back((p1.sigma - p0.sigma) / (p1.a - p0.a));
  }
  return sweep;
}

}  // namespace nematicon::groundstate
