#include "nematicon/grid.hpp"

#include <cmath>
#include <numbers>

namespace nematicon {

namespace {
constexpr Real pi = std::numbers::pi;
}

std::shared_ptr<const RadialGrid> RadialGrid::make(Real r_max, Index n) {
  if (!(r_max > 0) || !std::isfinite(r_max))
    throw InvalidGrid("radial grid needs r_max > 0");
  if (n < 4) throw InvalidGrid("radial grid needs at least 4 nodes");

  auto g = std::make_shared<RadialGrid>();
  g->r_max = r_max;
  g->n = n;
  g->h = r_max / static_cast<Real>(n);
  g->r = (Array::LinSpaced(n, 0, static_cast<Real>(n - 1)) + 0.5) * g->h;
  g->w = 2.0 * pi * g->h * g->r;

  // Euler-Maclaurin end corrections for the midpoint rule applied to
  // g(r) = 2 pi r f(r): the missing term is (h^2/24)[g'(r_max) - g'(0)].
  // g'(0) = 2 pi f(0) with f(0) extrapolated from the first two nodes;
  // g'(r_max) = 2 pi (f + r f') at r_max with f, f' from the quadratic
  // through the last three nodes. Exact for f in {1, r^2}; weights stay
  // positive.
  const Real h = g->h, R = r_max;
  Array iw = g->w;
  iw[0] -= 3.0 * pi * h * h / 32.0;
  iw[1] += pi * h * h / 96.0;
  const Real c = pi * h * h / 12.0;
  iw[n - 3] += c * (3.0 / 8.0 + R / h);
  iw[n - 2] += c * (-5.0 / 4.0 - 3.0 * R / h);
  iw[n - 1] += c * (15.0 / 8.0 + 2.0 * R / h);
  g->iw = std::move(iw);
  return g;
}

std::shared_ptr<const PlaneGrid> PlaneGrid::make(Real length, Index n) {
  if (!(length > 0) || !std::isfinite(length))
    throw InvalidGrid("plane grid needs length > 0");
  if (n < 8 || (n & (n - 1)) != 0)
    throw InvalidGrid("plane grid size must be a power of two (>= 8)");

  auto g = std::make_shared<PlaneGrid>();
  g->length = length;
  g->n = n;
  g->h = length / static_cast<Real>(n);
  g->x = Array::LinSpaced(n, 0, static_cast<Real>(n - 1)) * g->h - length / 2;
  g->k = Array(n);
  const Real dk = 2.0 * pi / length;
  for (Index j = 0; j < n; ++j)
    g->k[j] = dk * static_cast<Real>(j < n / 2 ? j : j - n);
  g->k2.resize(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      g->k2(i, j) = g->k[i] * g->k[i] + g->k[j] * g->k[j];
  return g;
}

Array TriDiag::apply(const Array& f) const {
  const Index n = size();
  Array out(n);
  out[0] = diag[0] * f[0] + (n > 1 ? upper[0] * f[1] : 0.0);
  for (Index i = 1; i + 1 < n; ++i)
    out[i] = lower[i] * f[i - 1] + diag[i] * f[i] + upper[i] * f[i + 1];
  if (n > 1) out[n - 1] = lower[n - 1] * f[n - 2] + diag[n - 1] * f[n - 1];
  return out;
}

Array TriDiag::solve(const Array& rhs) const {
  const Index n = size();
  Array c(n), d(n);
  Real piv = diag[0];
  c[0] = upper[0] / piv;
  d[0] = rhs[0] / piv;
  for (Index i = 1; i < n; ++i) {
    piv = diag[i] - lower[i] * c[i - 1];
    c[i] = (i + 1 < n ? upper[i] : 0.0) / piv;
    d[i] = (rhs[i] - lower[i] * d[i - 1]) / piv;
  }
  Array x(n);
  x[n - 1] = d[n - 1];
  for (Index i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

TriDiag TriDiag::shifted(Real alpha, Real beta) const {
  return {beta * lower, alpha + beta * diag, beta * upper};
}

TriDiag TriDiag::shifted(const Array& alpha, Real beta) const {
  return {beta * lower, alpha + beta * diag, beta * upper};
}

TriDiag radial_laplacian_bands(const RadialGrid& g) {
  const Index n = g.n;
  const Real h = g.h, h2 = h * h;
  Array lo = Array::Zero(n), di = Array::Zero(n), up = Array::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const Real ri = g.r[i];
    const Real f_in = static_cast<Real>(i) * h;        // inner face radius
    const Real f_out = static_cast<Real>(i + 1) * h;   // outer face radius
    if (i > 0) lo[i] = f_in / (ri * h2);
    if (i + 1 < n) {
      up[i] = f_out / (ri * h2);
      di[i] = -(f_in + f_out) / (ri * h2);
    } else {
      // Dirichlet ghost beyond r_max: f_n = -f_{n-1} doubles the outer flux.
      di[i] = -(f_in + 2.0 * f_out) / (ri * h2);
    }
  }
  return {std::move(lo), std::move(di), std::move(up)};
}

Array radial_laplacian(const RadialGrid& g, const Array& f) {
  return radial_laplacian_bands(g).apply(f);
}

RadialField radial_laplacian(const RadialField& f) {
  return {f.grid, radial_laplacian(*f.grid, f.values)};
}

Real integrate(const RadialGrid& g, const Array& f) {
  return (g.iw * f).sum();
}

Real l2_inner(const RadialGrid& g, const Array& f, const Array& gg) {
  return (g.w * f * gg).sum();
}

Real grad_inner(const RadialGrid& g, const Array& f, const Array& gg) {
  const Index n = g.n;
  const Real h = g.h;
  Real acc = 0;
  for (Index i = 0; i + 1 < n; ++i) {
    const Real rf = static_cast<Real>(i + 1) * h;
    acc += rf * (f[i + 1] - f[i]) * (gg[i + 1] - gg[i]);
  }
  // Dirichlet face at r_max: the ghost slope -2 f_{n-1}/h acts over the
  // half cell inside the domain, which is exactly the dual pairing of the
  // boundary flux in the Laplacian.
  acc += g.r_max * 2.0 * f[n - 1] * gg[n - 1];
  return 2.0 * std::numbers::pi / h * acc;
}

Real h1_inner(const RadialGrid& g, const Array& f, const Array& gg) {
  return l2_inner(g, f, gg) + grad_inner(g, f, gg);
}

Real l2_norm(const RadialGrid& g, const Array& f) {
  return std::sqrt(l2_inner(g, f, f));
}

Real h1_norm(const RadialGrid& g, const Array& f) {
  return std::sqrt(h1_inner(g, f, f));
}

Real l2_inner(const RadialField& f, const RadialField& g) {
  require_same_grid(f, g);
  return l2_inner(*f.grid, f.values, g.values);
}

Real h1_inner(const RadialField& f, const RadialField& g) {
  require_same_grid(f, g);
  return h1_inner(*f.grid, f.values, g.values);
}

Real l2_norm(const RadialField& f) { return l2_norm(*f.grid, f.values); }
Real h1_norm(const RadialField& f) { return h1_norm(*f.grid, f.values); }

Real integrate(const PlaneGrid& g, const ArrayXXr& f) {
  return f.sum() * g.h * g.h;
}

Complex l2_inner(const PlaneGrid& g, const ArrayXXc& f, const ArrayXXc& gg) {
  return (f.conjugate() * gg).sum() * (g.h * g.h);
}

Real l2_inner(const PlaneGrid& g, const ArrayXXr& f, const ArrayXXr& gg) {
  return (f * gg).sum() * (g.h * g.h);
}

Real l2_norm(const PlaneGrid& g, const ArrayXXc& f) {
  return std::sqrt(f.abs2().sum() * g.h * g.h);
}

Real l2_norm(const PlaneGrid& g, const ArrayXXr& f) {
  return std::sqrt((f * f).sum() * g.h * g.h);
}

void require_same_grid(const RadialField& f, const RadialField& g) {
  if (f.grid == g.grid) return;
  if (!f.grid || !g.grid || f.grid->n != g.grid->n ||
      f.grid->r_max != g.grid->r_max)
    throw GridMismatch("radial fields live on different grids");
}

void require_same_grid(const RadialGrid& g, const Array& f) {
  if (f.size() != g.n)
    throw GridMismatch("array length does not match the radial grid");
}

void require_finite(const Array& f, const char* what) {
  if (!f.allFinite()) throw NonFiniteField(std::string(what) + ": non-finite values");
}

void require_finite(const ArrayXXc& f, const char* what) {
  if (!f.allFinite()) throw NonFiniteField(std::string(what) + ": non-finite values");
}

}  // namespace nematicon
