#include "nematicon/angle.hpp"

#include <cmath>
#include <numbers>

namespace nematicon::angle {

namespace {

constexpr Real quarter_pi = std::numbers::pi / 4.0;

Array clip_box(Array t) {
  return t.max(0.0).min(quarter_pi);
}

// Euler-Lagrange residual of the angle equation at fixed intensity.
Array el_residual(const RadialGrid& g, const TriDiag& lap, const Array& u2,
                  const Array& theta, const energy::Params& p) {
  (void)g;
  return -p.lambda * lap.apply(theta) + p.q * (2.0 * theta).sin() -
         2.0 * u2 * (2.0 * theta).cos();
}

}  // namespace

RadialSolution solve_intensity(const RadialGridPtr& g, const Array& u2,
                               const energy::Params& p, const Options& opts,
                               const Array* warm) {
  p.validate();
  require_finite(u2, "angle solve intensity");
  const Real tol = opts.tol > 0 ? opts.tol : 1e-10;
  const TriDiag lap = radial_laplacian_bands(*g);

  RadialSolution out;
  out.theta = RadialField(g);
  Array theta = warm ? clip_box(*warm) : Array::Zero(g->n);

  Real best = std::numeric_limits<Real>::infinity();
  for (int iter = 0; iter <= opts.max_iter; ++iter) {
    const Array R = el_residual(*g, lap, u2, theta, p);
    const Real res = R.abs().maxCoeff();
    out.residual = res;
    out.iterations = iter;
    if (res < tol) {
      out.converged = true;
      break;
    }
    if (res > 1e3 * best && iter > 5)
      throw LineSearchStalled("angle Newton residual diverging");
    best = std::min(best, res);
    if (iter == opts.max_iter) break;

    // Newton step: [-lambda Lap + diag(2q cos 2t + 4 u2 sin 2t)] dt = -R.
    // The diagonal term is nonnegative on [0, pi/4], so the system is
    // strictly diagonally dominant and the direct solve is stable.
    const Array d = 2.0 * p.q * (2.0 * theta).cos() + 4.0 * u2 * (2.0 * theta).sin();
    const TriDiag H = lap.shifted(d, -p.lambda);
    theta = clip_box(theta + H.solve(-R));
  }
  out.theta.values = std::move(theta);
  return out;
}

RadialSolution solve(const RadialField& u, const energy::Params& p,
                     const Options& opts, const Array* warm) {
  require_finite(u.values, "angle solve");
  return solve_intensity(u.grid, u.values * u.values, p, opts, warm);
}

namespace {

// Preconditioned CG for [-lambda Lap + diag(d)] x = b on the plane grid,
// preconditioner (lambda |k|^2 + mean(d))^{-1} applied spectrally.
ArrayXXr pcg(SpectralWorkspace& ws, const ArrayXXr& d, Real dbar,
             const ArrayXXr& b, const energy::Params& p, Real rel_tol,
             int max_iter, int* iters_out) {
  const auto& g = *ws.grid;
  auto apply = [&](const ArrayXXr& x) -> ArrayXXr {
    return -p.lambda * plane_laplacian(ws, x) + d * x;
  };
  auto precond = [&](const ArrayXXr& v) -> ArrayXXr {
    ws.s1 = v.cast<Complex>();
    ArrayXXc vc = ws.s1;
    ws.fft.forward(vc, ws.s2);
    ws.s2 /= (p.lambda * g.k2 + dbar).cast<Complex>();
    ws.fft.inverse(ws.s2, vc);
    return vc.real();
  };

  ArrayXXr x = ArrayXXr::Zero(g.n, g.n);
  ArrayXXr r = b;
  ArrayXXr z = precond(r);
  ArrayXXr pd = z;
  Real rz = (r * z).sum();
  const Real b2 = (b * b).sum();
  int it = 0;
  for (; it < max_iter; ++it) {
    if ((r * r).sum() <= rel_tol * rel_tol * b2) break;
    const ArrayXXr Ap = apply(pd);
    const Real alpha = rz / (pd * Ap).sum();
    x += alpha * pd;
    r -= alpha * Ap;
    z = precond(r);
    const Real rz_new = (r * z).sum();
    pd = z + (rz_new / rz) * pd;
    rz = rz_new;
  }
  if (iters_out) *iters_out += it;
  return x;
}

ArrayXXr clip_box2(ArrayXXr t) {
  return t.max(0.0).min(quarter_pi);
}

}  // namespace

PlaneSolution solve_intensity(SpectralWorkspace& ws, const PlaneGridPtr& g,
                              const ArrayXXr& u2, const energy::Params& p,
                              const Options& opts, const ArrayXXr* warm) {
  p.validate();
  const Real tol = opts.tol > 0 ? opts.tol : 1e-8;

  PlaneSolution out;
  out.theta = RealPlaneField(g);
  ArrayXXr theta = warm ? clip_box2(*warm) : ArrayXXr::Zero(g->n, g->n);

  Real best = std::numeric_limits<Real>::infinity();
  int cg_iters = 0;
  for (int iter = 0; iter <= opts.max_iter; ++iter) {
    const ArrayXXr sin2t = (2.0 * theta).sin();
    const ArrayXXr cos2t = (2.0 * theta).cos();
    const ArrayXXr R =
        -p.lambda * plane_laplacian(ws, theta) + p.q * sin2t - 2.0 * u2 * cos2t;
    const Real res = R.abs().maxCoeff();
    out.residual = res;
    out.iterations = iter;
    if (res < tol) {
      out.converged = true;
      break;
    }
    if (res > 1e3 * best && iter > 5)
      throw LineSearchStalled("angle Newton residual diverging");
    best = std::min(best, res);
    if (iter == opts.max_iter) break;

    const ArrayXXr d = 2.0 * p.q * cos2t + 4.0 * u2 * sin2t;
    const Real dbar = d.mean();
    const ArrayXXr delta =
        pcg(ws, d, dbar, (-R).eval(), p, 1e-2, 200, &cg_iters);
    theta = clip_box2(theta + delta);
  }
  out.theta.values = std::move(theta);
  return out;
}

PlaneSolution solve(SpectralWorkspace& ws, const ComplexPlaneField& u,
                    const energy::Params& p, const Options& opts,
                    const ArrayXXr* warm) {
  require_finite(u.values, "angle solve");
  return solve_intensity(ws, u.grid, u.values.abs2(), p, opts, warm);
}

std::vector<ContinuityRow> continuity_probe(const RadialField& u,
                                            const RadialField& h,
                                            const std::vector<Real>& scales,
                                            const energy::Params& p) {
  require_same_grid(u, h);
  for (size_t i = 0; i + 1 < scales.size(); ++i)
    if (!(scales[i] > scales[i + 1]) || !(scales.back() > 0))
      throw InvalidParameter("continuity probe scales must be positive decreasing");

  const auto base = solve(u, p);
  std::vector<ContinuityRow> rows;
  rows.reserve(scales.size());
  for (Real s : scales) {
    RadialField us(u.grid, u.values + s * h.values);
    const auto sol = solve(us, p, {}, &base.theta.values);
    ContinuityRow row;
    row.scale = s;
    row.du_h1 = s * h1_norm(h);
    row.dtheta_h1 = h1_norm(*u.grid, sol.theta.values - base.theta.values);
    row.ratio = row.du_h1 > 0 ? row.dtheta_h1 / row.du_h1 : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nematicon::angle
