#include "nematicon/evolution.hpp"

#include "nematicon/rng.hpp"

#include <cmath>

namespace nematicon::evolution {

namespace {

ArrayXXr radius2_lattice(const PlaneGrid& g) {
  ArrayXXr r2(g.n, g.n);
  for (Index j = 0; j < g.n; ++j)
    for (Index i = 0; i < g.n; ++i)
      r2(i, j) = g.x[i] * g.x[i] + g.x[j] * g.x[j];
  return r2;
}

}  // namespace

Propagator::Propagator(PlaneGridPtr grid, const energy::Params& p,
                       const Options& opts)
    : grid_(std::move(grid)), ws_(grid_), p_(p), opts_(opts) {
  p_.validate();
  if (!(opts_.dz > 0)) throw InvalidParameter("step dz must be positive");
  const auto& g = *grid_;
  theta_ = ArrayXXr::Zero(g.n, g.n);
  dispersion_ = (Complex(0, -0.5 * opts_.dz) * g.k2.cast<Complex>()).exp();
  r2_ = radius2_lattice(g);
}

void Propagator::medium_kick(ArrayXXc& u, Real c) {
  const ArrayXXr ph = c * (2.0 * theta_).sin();
  u *= (ph.cos().cast<Complex>() +
        Complex(0, 1) * ph.sin().cast<Complex>());
}

void Propagator::refresh_theta(const ArrayXXc& u) {
  const ArrayXXr u2 = u.abs2();
  auto sol = angle::solve_intensity(ws_, grid_, u2, p_, opts_.angle_opts,
                                    theta_ready_ ? &theta_ : nullptr);
  theta_ = sol.theta.values;
  theta_ready_ = true;
}

void Propagator::step(ArrayXXc& u) {
  if (opts_.couple) {
    if (!theta_ready_) refresh_theta(u);
    medium_kick(u, 0.5 * opts_.dz);
  }
  ws_.fft.forward(u, ws_.s1);
  ws_.s1 *= dispersion_;
  ws_.fft.inverse(ws_.s1, u);
  if (opts_.couple) {
    refresh_theta(u);
    medium_kick(u, 0.5 * opts_.dz);
  }
  z_ += opts_.dz;
}

StepTrace Propagator::observe(const ArrayXXc& u) {
  const auto& g = *grid_;
  StepTrace t;
  t.z = z_;
  const Real mass = l2_inner(g, u, u).real();
  t.Q = 0.5 * mass;
  if (opts_.couple && !theta_ready_) refresh_theta(u);
  t.E = energy::evaluate(ws_, ComplexPlaneField(grid_, u),
                         RealPlaneField(grid_, theta_), p_)
            .E;
  const Real half = 0.5 * g.length;
  const Real edge_r2 = (1.0 - opts_.edge_width) * half;
  Real edge_mass = 0;
  for (Index j = 0; j < g.n; ++j)
    for (Index i = 0; i < g.n; ++i)
      if (r2_(i, j) > edge_r2 * edge_r2) edge_mass += std::norm(u(i, j));
  edge_mass *= g.h * g.h;
  t.edge_fraction = mass > 0 ? edge_mass / mass : 0.0;
  t.box_warning = t.edge_fraction > opts_.edge_tol;
  return t;
}

Result propagate(const PlaneGridPtr& grid, const ArrayXXc& u0, Real z_end,
                 const energy::Params& p, const Options& opts) {
  const auto& g = *grid;
  if (u0.rows() != g.n || u0.cols() != g.n)
    throw GridMismatch("field does not match the plane grid");
  require_finite(u0, "propagation start");
  if (!(z_end > 0)) throw InvalidParameter("z_end must be positive");

  // The split step assumes the beam stays away from the box edge; refuse
  // starts that are not well contained.
  const ArrayXXr r2 = radius2_lattice(g);
  const Real quarter = 0.25 * g.length;
  Real inner = 0, total = 0;
  for (Index j = 0; j < g.n; ++j)
    for (Index i = 0; i < g.n; ++i) {
      const Real m = std::norm(u0(i, j));
      total += m;
      if (r2(i, j) < quarter * quarter) inner += m;
    }
  if (!(total > 0) || inner < 0.999 * total)
    throw InvalidParameter("beam must carry 99.9% of its mass inside r < L/4");

  Propagator prop(grid, p, opts);
  Result out;
  out.u = u0;
  const int steps = static_cast<int>(std::ceil(z_end / opts.dz - 1e-12));
  out.trace.push_back(prop.observe(out.u));
  for (int s = 1; s <= steps; ++s) {
    prop.step(out.u);
    if ((opts.record_every > 0 && s % opts.record_every == 0) || s == steps) {
      out.trace.push_back(prop.observe(out.u));
      out.box_warning = out.box_warning || out.trace.back().box_warning;
    }
  }
  out.theta = prop.theta();
  out.z = prop.z();
  out.steps = steps;
  return out;
}

Distance orbital_distance(SpectralWorkspace& ws, const ArrayXXc& u,
                          const ArrayXXc& v_ref, const ArrayXXr& phi_ref,
                          const energy::Params& p, const angle::Options& aopts,
                          const ArrayXXr* theta_warm) {
  const auto& g = *ws.grid;
  const Index n = g.n;

  // Lattice cross-correlation of the moduli: peak at the translation that
  // best overlays the reference on the beam.
  ArrayXXc a = u.abs().cast<Complex>();
  ArrayXXc b = v_ref.abs().cast<Complex>();
  ArrayXXc fa(n, n), fb(n, n), corr(n, n);
  ws.fft.forward(a, fa);
  ws.fft.forward(b, fb);
  fa *= fb.conjugate();
  ws.fft.inverse(fa, corr);

  Index si = 0, sj = 0;
  Real best = corr(0, 0).real();
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      if (corr(i, j).real() > best) {
        best = corr(i, j).real();
        si = i;
        sj = j;
      }

  auto wrap = [&](Index i) { return (i + n) % n; };
  auto subpixel = [&](Index i, Index j, bool along_rows) {
    const Real c0 = corr(i, j).real();
    const Real cm = along_rows ? corr(wrap(i - 1), j).real()
                               : corr(i, wrap(j - 1)).real();
    const Real cp = along_rows ? corr(wrap(i + 1), j).real()
                               : corr(i, wrap(j + 1)).real();
    const Real denom = cm + cp - 2.0 * c0;
    return denom < 0 ? 0.5 * (cm - cp) / denom : 0.0;
  };
  const Real di = subpixel(si, sj, true);
  const Real dj = subpixel(si, sj, false);
  const Real shift_i = (si > n / 2 ? Real(si - n) : Real(si)) + di;
  const Real shift_j = (sj > n / 2 ? Real(sj - n) : Real(sj)) + dj;

  Distance out;
  out.frame.dx = shift_i * g.h;
  out.frame.dy = shift_j * g.h;

  ArrayXXc v_shift(n, n);
  spectral_shift(ws, v_ref, out.frame.dx, out.frame.dy, v_shift);
  out.frame.alpha = std::arg(h1_inner(ws, v_shift, u));

  const Complex rot = std::exp(Complex(0, out.frame.alpha));
  out.field = h1_norm(ws, ArrayXXc(u - rot * v_shift));

  auto tsol = angle::solve_intensity(ws, ws.grid, u.abs2(), p, aopts, theta_warm);
  ArrayXXc phi_c = phi_ref.cast<Complex>(), phi_sc(n, n);
  spectral_shift(ws, phi_c, out.frame.dx, out.frame.dy, phi_sc);
  out.angle = h1_norm(ws, ArrayXXr(tsol.theta.values - phi_sc.real()));
  out.total = out.field + out.angle;
  return out;
}

ArrayXXr embed_radial(const PlaneGrid& pg, const RadialGrid& rg,
                      const Array& f) {
  require_same_grid(rg, f);
  const Index n = rg.n;
  auto node = [&](Index j) -> Real {
    if (j < 0) j = -1 - j;  // even reflection across the axis
    return j < n ? f[j] : 0.0;
  };
  ArrayXXr out(pg.n, pg.n);
  for (Index j = 0; j < pg.n; ++j)
    for (Index i = 0; i < pg.n; ++i) {
      const Real r = std::sqrt(pg.x[i] * pg.x[i] + pg.x[j] * pg.x[j]);
      if (r >= rg.r_max) {
        out(i, j) = 0.0;
        continue;
      }
      const Real t = r / rg.h - 0.5;
      const Real fl = std::floor(t);
      const Index j0 = static_cast<Index>(fl);
      const Real s = t - fl;
      const Real f0 = node(j0 - 1), f1 = node(j0), f2 = node(j0 + 1),
                 f3 = node(j0 + 2);
      out(i, j) = 0.5 * (2.0 * f1 + s * (f2 - f0) +
                         s * s * (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) +
                         s * s * s * (3.0 * (f1 - f2) + f3 - f0));
    }
  return out;
}

PlanePolish polish_plane(SpectralWorkspace& ws, const ArrayXXr& u0,
                         const energy::Params& p, int max_iter, Real tol,
                         Real tau) {
  const auto& g = *ws.grid;
  p.validate();
  ArrayXXr u = u0;
  const Real a = l2_inner(g, u, u);
  if (!(a > 0)) throw InvalidParameter("cannot polish the zero field");

  PlanePolish out;
  ArrayXXr theta = ArrayXXr::Zero(g.n, g.n);
  bool warm = false;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    auto sol = angle::solve_intensity(ws, ws.grid, u * u, p, {},
                                      warm ? &theta : nullptr);
    theta = sol.theta.values;
    warm = true;
    const ArrayXXr sin2t = (2.0 * theta).sin();

    const ArrayXXr lap_u = plane_laplacian(ws, u);
    const Real grad2 = -l2_inner(g, u, lap_u);
    const Real sigma =
        (-grad2 + 2.0 * l2_inner(g, u * u, sin2t)) / (2.0 * a);
    const ArrayXXr R = -lap_u + 2.0 * sigma * u - 2.0 * u * sin2t;
    out.sigma = sigma;
    out.residual = R.abs().maxCoeff();
    if (out.residual < tol) break;

    // Descend with the inverse of the dominant linear part.
    ws.s1 = R.cast<Complex>();
    ws.fft.forward(ws.s1, ws.s2);
    ws.s2 /= (0.5 * g.k2 + 2.0 * std::max(sigma, 0.1)).cast<Complex>();
    ws.fft.inverse(ws.s2, ws.s1);
    u -= tau * 0.5 * ws.s1.real();
    u *= std::sqrt(a / l2_inner(g, u, u));
  }
  out.u = u.cast<Complex>();
  out.theta = theta;
  out.iterations = iter;
  return out;
}

ArrayXXc perturb_bump(const PlaneGrid& g, const ArrayXXc& u, Real eps,
                      Real width) {
  const ArrayXXr r2 = radius2_lattice(g);
  const ArrayXXr bump = 1.0 + eps * (-r2 / (2.0 * width * width)).exp();
  return u * bump.cast<Complex>();
}

ArrayXXc perturb_noise(SpectralWorkspace& ws, const ArrayXXc& u, Real eps,
                       uint64_t seed) {
  const auto& g = *ws.grid;
  ArrayXXc noise(g.n, g.n);
  uint64_t state = seed;
  for (Index j = 0; j < g.n; ++j)
    for (Index i = 0; i < g.n; ++i) {
      const Real re = rng::uniform(state, -1.0, 1.0);
      const Real im = rng::uniform(state, -1.0, 1.0);
      noise(i, j) = Complex(re, im);
    }
  noise *= eps / h1_norm(ws, noise);
  return u + noise;
}

ArrayXXc rescale_charge(const PlaneGrid& g, const ArrayXXc& u,
                        Real target_q2) {
  const Real mass = l2_inner(g, u, u).real();
  if (!(mass > 0)) throw InvalidParameter("cannot rescale the zero field");
  return u * std::sqrt(target_q2 / mass);
}

}  // namespace nematicon::evolution
