#include "nematicon/energy.hpp"

#include "nematicon/angle.hpp"

namespace nematicon::energy {

void Params::validate() const {
  if (!(lambda > 0) || !(q > 0))
    throw InvalidParameter("medium parameters lambda, q must be positive");
}

Report evaluate(const RadialField& u, const RadialField& theta, const Params& p) {
  require_same_grid(u, theta);
  const auto& g = *u.grid;
  const Array sin2t = (2.0 * theta.values).sin();
  const Array cos2t = (2.0 * theta.values).cos();

  Report rep;
  rep.E_plus = 0.25 * (p.lambda * grad_inner(g, theta.values, theta.values) +
                       p.q * l2_inner(g, Array::Ones(g.n), (1.0 - cos2t)));
  rep.E_minus = 0.25 * (grad_inner(g, u.values, u.values) -
                        2.0 * l2_inner(g, u.values * u.values, sin2t));
  rep.E = rep.E_plus + rep.E_minus;
  rep.Q = 0.5 * l2_inner(g, u.values, u.values);
  return rep;
}

Report evaluate(SpectralWorkspace& ws, const ComplexPlaneField& u,
                const RealPlaneField& theta, const Params& p) {
  require_same_grid(u, theta);
  const auto& g = *u.grid;
  const ArrayXXr u2 = u.values.abs2();
  const ArrayXXr sin2t = (2.0 * theta.values).sin();
  const ArrayXXr cos2t = (2.0 * theta.values).cos();

  // Gradient terms via Parseval on the unnormalized forward transform.
  const Real pscale = g.h * g.h / static_cast<Real>(g.n * g.n);
  ws.fft.forward(u.values, ws.s1);
  const Real grad_u2 = (ws.s1.abs2() * g.k2).sum() * pscale;
  ws.s2 = theta.values.cast<Complex>();
  ArrayXXc tc = ws.s2;
  ws.fft.forward(tc, ws.s1);
  const Real grad_t2 = (ws.s1.abs2() * g.k2).sum() * pscale;

  Report rep;
  rep.E_plus = 0.25 * (p.lambda * grad_t2 + p.q * integrate(g, 1.0 - cos2t));
  rep.E_minus = 0.25 * (grad_u2 - 2.0 * integrate(g, u2 * sin2t));
  rep.E = rep.E_plus + rep.E_minus;
  rep.Q = 0.5 * integrate(g, u2);
  return rep;
}

Array grad_u(const RadialGrid& g, const Array& u, const Array& theta) {
  const Array sin2t = (2.0 * theta).sin();
  return 0.5 * (-radial_laplacian(g, u) - 2.0 * u * sin2t);
}

ArrayXXc grad_u(SpectralWorkspace& ws, const ArrayXXc& u, const ArrayXXr& theta) {
  ArrayXXc lap;
  plane_laplacian(ws, u, lap);
  const ArrayXXr sin2t = (2.0 * theta).sin();
  return 0.5 * (-lap - 2.0 * u * sin2t);
}

Real angle_objective(const RadialGrid& g, const Array& u2, const Array& theta,
                     const Params& p) {
  const Array sin2t = (2.0 * theta).sin();
  const Array cos2t = (2.0 * theta).cos();
  return p.lambda * grad_inner(g, theta, theta) +
         p.q * l2_inner(g, Array::Ones(g.n), 1.0 - cos2t) -
         2.0 * l2_inner(g, u2, sin2t);
}

Array grad_theta(const RadialGrid& g, const Array& u2, const Array& theta,
                 const Params& p) {
  const Array sin2t = (2.0 * theta).sin();
  const Array cos2t = (2.0 * theta).cos();
  return 2.0 * (-p.lambda * radial_laplacian(g, theta) + p.q * sin2t -
                2.0 * u2 * cos2t);
}

Real angle_objective(SpectralWorkspace& ws, const ArrayXXr& u2,
                     const ArrayXXr& theta, const Params& p) {
  const auto& g = *ws.grid;
  const ArrayXXr sin2t = (2.0 * theta).sin();
  const ArrayXXr cos2t = (2.0 * theta).cos();
  ws.s2 = theta.cast<Complex>();
  ArrayXXc tc = ws.s2;
  ws.fft.forward(tc, ws.s1);
  const Real pscale = g.h * g.h / static_cast<Real>(g.n * g.n);
  const Real grad_t2 = (ws.s1.abs2() * g.k2).sum() * pscale;
  return p.lambda * grad_t2 + p.q * integrate(g, 1.0 - cos2t) -
         2.0 * integrate(g, u2 * sin2t);
}

ArrayXXr grad_theta(SpectralWorkspace& ws, const ArrayXXr& u2,
                    const ArrayXXr& theta, const Params& p) {
  const ArrayXXr sin2t = (2.0 * theta).sin();
  const ArrayXXr cos2t = (2.0 * theta).cos();
  return 2.0 * (-p.lambda * plane_laplacian(ws, theta) + p.q * sin2t -
                2.0 * u2 * cos2t);
}

Real modified(const RadialField& u, const Params& p, Real sigma) {
  if (!(sigma > 0) || !(sigma < 1))
    throw SigmaOutOfRange("modified energy needs sigma in (0,1)");
  auto sol = angle::solve(u, p);
  Report rep = evaluate(u, sol.theta, p);
  return rep.S(sigma);
}

}  // namespace nematicon::energy
