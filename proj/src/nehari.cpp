#include "nematicon/nehari.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>

namespace nematicon::nehari {

namespace {

using SpMat = Eigen::SparseMatrix<Real>;
using Triplet = Eigen::Triplet<Real>;

// d/dr S(r*w) / r, evaluated with the angle of the scaled profile.
Real ray_slope(const RadialGridPtr& grid, const Array& w, Real r, Real sigma,
               const energy::Params& p, const angle::Options& aopts,
               Array& theta) {
  const auto& g = *grid;
  const Array u2 = (r * r) * w * w;
  auto sol = angle::solve_intensity(grid, u2, p, aopts,
                                    theta.size() ? &theta : nullptr);
  theta = sol.theta.values;
  return grad_inner(g, w, w) + 2.0 * sigma * l2_inner(g, w, w) -
         2.0 * l2_inner(g, w * w, (2.0 * theta).sin());
}

// Square Newton for the stationary pair at fixed sigma.
void newton_fixed_sigma(const RadialGridPtr& grid, Array& v, Array& phi,
                        Real sigma, const energy::Params& p, int max_iter,
                        Real tol) {
  const auto& g = *grid;
  const Index n = g.n;
  const TriDiag lap = radial_laplacian_bands(g);

  auto residual = [&](const Array& vv, const Array& pp, Array& F1, Array& F2) {
    const Array s = (2.0 * pp).sin(), c = (2.0 * pp).cos();
    F1 = -lap.apply(vv) + 2.0 * sigma * vv - 2.0 * vv * s;
    F2 = -p.lambda * lap.apply(pp) + p.q * s - 2.0 * vv * vv * c;
    return std::max(F1.abs().maxCoeff(), F2.abs().maxCoeff());
  };

  Array F1, F2;
  Real best = residual(v, phi, F1, F2);
  for (int iter = 0; iter < max_iter && best >= tol; ++iter) {
    const Array s = (2.0 * phi).sin(), c = (2.0 * phi).cos();
    std::vector<Triplet> trip;
    trip.reserve(static_cast<size_t>(8 * n));
    for (Index i = 0; i < n; ++i) {
      trip.emplace_back(i, i, -lap.diag[i] + 2.0 * sigma - 2.0 * s[i]);
      trip.emplace_back(n + i, n + i,
                        -p.lambda * lap.diag[i] + 2.0 * p.q * c[i] +
                            4.0 * v[i] * v[i] * s[i]);
      if (i > 0) {
        trip.emplace_back(i, i - 1, -lap.lower[i]);
        trip.emplace_back(n + i, n + i - 1, -p.lambda * lap.lower[i]);
      }
      if (i + 1 < n) {
        trip.emplace_back(i, i + 1, -lap.upper[i]);
        trip.emplace_back(n + i, n + i + 1, -p.lambda * lap.upper[i]);
      }
      const Real cc = -4.0 * v[i] * c[i];
      trip.emplace_back(i, n + i, cc);
      trip.emplace_back(n + i, i, cc);
    }
    SpMat J(2 * n, 2 * n);
    J.setFromTriplets(trip.begin(), trip.end());
    J.makeCompressed();

    Eigen::SparseLU<SpMat> lu;
    lu.compute(J);
    if (lu.info() != Eigen::Success)
      throw EigenFailure("fixed-sigma Newton factorization failed");
    Vec F(2 * n);
    F.head(n) = F1.matrix();
    F.tail(n) = F2.matrix();
    const Vec delta = lu.solve(-F);

    Real t = 1.0;
    for (int back = 0;; ++back) {
      Array v_try = v + t * delta.head(n).array();
      Array p_try = phi + t * delta.tail(n).array();
      Array G1, G2;
      const Real res = residual(v_try, p_try, G1, G2);
      if (res < best || back == 4) {
        if (res >= best) return;  // keep the best iterate found
        v = std::move(v_try);
        phi = std::move(p_try);
        F1 = std::move(G1);
        F2 = std::move(G2);
        best = res;
        break;
      }
      t *= 0.5;
    }
  }
}

}  // namespace

bool in_sphere(const RadialGrid& g, const Array& w, Real sigma) {
  return grad_inner(g, w, w) - 2.0 * (1.0 - sigma) * l2_inner(g, w, w) < 0.0;
}

Real nehari_scale(const RadialGridPtr& grid, const Array& w, Real sigma,
                  const energy::Params& p, const angle::Options& aopts,
                  Array* theta_cache, Real r_cap) {
  if (!(sigma > 0.0 && sigma < 1.0))
    throw SigmaOutOfRange("sigma must lie in (0, 1)");
  const auto& g = *grid;
  require_same_grid(g, w);
  if (!in_sphere(g, w, sigma))
    throw NotInSphere("direction admits no action-stationary scale");

  Array local;
  Array& theta = theta_cache ? *theta_cache : local;
  auto slope = [&](Real r) {
    return ray_slope(grid, w, r, sigma, p, aopts, theta);
  };

  // Bracket the sign change; the slope starts positive and goes negative
  // once the response saturates.
  Real lo = 1.0, hi = 1.0;
  Real f_lo = slope(lo);
  Real f_hi = f_lo;
  if (f_lo > 0.0) {
    while (f_hi > 0.0) {
      hi *= 2.0;
      if (hi > r_cap)
        throw ScaleNotFound("no stationary scale below the cap");
      f_hi = slope(hi);
    }
  } else {
    while (f_lo <= 0.0) {
      lo *= 0.5;
      if (lo < 1e-12)
        throw ScaleNotFound("stationary scale underflows toward zero");
      f_lo = slope(lo);
    }
  }

  // Bisection with a secant candidate whenever it lands inside the bracket.
  Real r = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
    Real cand = 0.5 * (lo + hi);
    if (f_hi != f_lo) {
      const Real sec = lo - f_lo * (hi - lo) / (f_hi - f_lo);
      if (sec > lo + 1e-14 * hi && sec < hi - 1e-14 * hi) cand = sec;
    }
    const Real f_c = slope(cand);
    r = cand;
    if (f_c == 0.0) break;
    if (f_c > 0.0) {
      lo = cand;
      f_lo = f_c;
    } else {
      hi = cand;
      f_hi = f_c;
    }
  }
  // Leave the cache holding the angle that belongs to the returned scale.
  slope(r);
  return r;
}

groundstate::GroundState minimize_action(const RadialGridPtr& grid, Real sigma,
                                         const energy::Params& p,
                                         const Options& opts) {
  if (!(sigma > 0.0 && sigma < 1.0))
    throw SigmaOutOfRange("sigma must lie in (0, 1)");
  p.validate();
  const auto& g = *grid;
  const TriDiag lap = radial_laplacian_bands(g);
  // H1 metric operator (I - Lap) for the sphere gradient.
  const TriDiag metric = lap.shifted(1.0, -1.0);

  auto normalize = [&](Array& w) { w /= std::sqrt(h1_inner(g, w, w)); };

  Array w;
  if (opts.initial) {
    require_same_grid(g, *opts.initial);
    w = *opts.initial;
    normalize(w);
    if (!in_sphere(g, w, sigma))
      throw NotInSphere("starting direction admits no stationary scale");
  } else {
    Real width = opts.width;
    // Wide enough that the quadratic barrier is undercut for this sigma.
    while (1.0 / (width * width) >= 2.0 * (1.0 - sigma)) width *= 2.0;
    w = (-(g.r * g.r) / (2.0 * width * width)).exp();
    normalize(w);
  }

  Array theta;  // warm cache shared with the scale root finder
  int restarts = 0;
  Real best = std::numeric_limits<Real>::infinity();
  int last_improve = 0;
  Real r = 1.0;
  int iter = 0;

  auto restart = [&]() {
    if (++restarts > 3)
      throw SphereEscape("descent collapsed after repeated restarts");
    Real width = opts.width * std::pow(2.0, restarts);
    w = (-(g.r * g.r) / (2.0 * width * width)).exp();
    normalize(w);
    theta.resize(0);
    best = std::numeric_limits<Real>::infinity();
    last_improve = iter;
  };

  Array u, R;
  for (; iter < opts.max_iter; ++iter) {
    try {
      r = nehari_scale(grid, w, sigma, p, opts.angle_opts, &theta, opts.r_cap);
    } catch (const NotInSphere&) {
      restart();
      continue;
    } catch (const ScaleNotFound&) {
      restart();
      continue;
    }
    u = r * w;
    if (h1_norm(g, u) < opts.delta) {
      restart();
      continue;
    }

    const Array sin2t = (2.0 * theta).sin();
    R = -lap.apply(u) + 2.0 * sigma * u - 2.0 * u * sin2t;
    const Real res = R.abs().maxCoeff();
    if (res < best - 1e-14) {
      best = res;
      last_improve = iter;
    } else if (iter - last_improve > 400) {
      restart();
      continue;
    }
    if (res < opts.polish_trigger) break;

    // H1-preconditioned gradient of the pulled-back action, projected onto
    // the tangent space of the unit sphere. The ray component of the
    // derivative vanishes on the manifold, so R itself drives the descent.
    Array G = metric.solve(0.5 * R);
    G -= h1_inner(g, G, w) * w;
    w -= opts.step * G;
    normalize(w);
  }

  Array v = u, phi = theta;
  newton_fixed_sigma(grid, v, phi, sigma, p, opts.polish_max, opts.tol);

  groundstate::GroundState gs;
  gs.grid = grid;
  gs.v = std::move(v);
  gs.phi = std::move(phi);
  gs.sigma = sigma;
  gs.a = l2_inner(g, gs.v, gs.v);
  gs.params = p;
  gs.solver = "nehari";
  gs.iterations = iter;
  const Array s = (2.0 * gs.phi).sin(), c = (2.0 * gs.phi).cos();
  const Array F1 = -lap.apply(gs.v) + 2.0 * sigma * gs.v - 2.0 * gs.v * s;
  const Array F2 =
      -p.lambda * lap.apply(gs.phi) + p.q * s - 2.0 * gs.v * gs.v * c;
  gs.residual = std::max(F1.abs().maxCoeff(), F2.abs().maxCoeff());
  gs.report = energy::evaluate(RadialField(grid, gs.v), RadialField(grid, gs.phi), p);
  return gs;
}

}  // namespace nematicon::nehari
