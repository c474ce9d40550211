#pragma once

#include <memory>

#include "nematicon/types.hpp"

namespace nematicon {

// Cell-centered grid for radial functions on the disk of radius r_max:
// nodes r_i = (i + 1/2) h, h = r_max / n, i = 0..n-1. Placing nodes off the
// axis sidesteps the 1/r coordinate singularity; fields are treated as even
// across r = 0 and zero at r = r_max (ghost reflection on both ends).
//
// Two coefficient vectors live here and they are not the same thing:
//   w   geometric cell measures 2*pi*r_i*h. Every bilinear form (L2/H1 inner
//       products, energies, gradients, eigensolver weightings) uses w, because
//       the finite-difference Laplacian below is exactly self-adjoint with
//       respect to w. Keeping forms and operator in the same geometry makes
//       adjoint identities and gradient checks hold to machine precision.
//   iw  integration rule: w plus Euler-Maclaurin end corrections at the axis
//       and the outer edge. integrate() uses iw; the corrections restore the
//       O(h^2) endpoint error of the midpoint rule, so integrals of smooth
//       densities come out ~4th order and polynomials up to r^2 are exact.
//       iw is NOT proportional to r_i at the five corrected nodes, so it
//       cannot serve as the weight of a self-adjoint form; that is why the
//       two vectors coexist.
struct RadialGrid {
  Real r_max = 0;
  Index n = 0;
  Real h = 0;
  Array r;   // nodes
  Array w;   // geometric quadrature weights, 2 pi r h
  Array iw;  // end-corrected integration weights

  static std::shared_ptr<const RadialGrid> make(Real r_max, Index n);
};

using RadialGridPtr = std::shared_ptr<const RadialGrid>;

struct RadialField {
  RadialGridPtr grid;
  Array values;

  RadialField() = default;
  explicit RadialField(RadialGridPtr g)
      : grid(std::move(g)), values(Array::Zero(grid->n)) {}
  RadialField(RadialGridPtr g, Array v) : grid(std::move(g)), values(std::move(v)) {}
};

// Uniform periodic n x n box of side `length` centered at the origin,
// x_j = j h - length/2. n must be a power of two (FFT path).
struct PlaneGrid {
  Real length = 0;
  Index n = 0;
  Real h = 0;
  Array x;      // per-axis coordinates
  Array k;      // per-axis wavenumbers in transform order
  ArrayXXr k2;  // |k|^2 on the full lattice, k2(i,j) = k(i)^2 + k(j)^2

  static std::shared_ptr<const PlaneGrid> make(Real length, Index n);
};

using PlaneGridPtr = std::shared_ptr<const PlaneGrid>;

template <typename Scalar>
struct PlaneField {
  PlaneGridPtr grid;
  Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> values;

  PlaneField() = default;
  explicit PlaneField(PlaneGridPtr g)
      : grid(std::move(g)),
        values(Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(grid->n, grid->n)) {}
  PlaneField(PlaneGridPtr g, Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> v)
      : grid(std::move(g)), values(std::move(v)) {}
};

using RealPlaneField = PlaneField<Real>;
using ComplexPlaneField = PlaneField<Complex>;

// Tridiagonal matrix in banded storage. lower(0) and upper(n-1) are unused.
// solve() is the Thomas algorithm without pivoting; every system assembled in
// this project is strictly diagonally dominant, where that is safe.
struct TriDiag {
  Array lower, diag, upper;

  Index size() const { return diag.size(); }
  Array apply(const Array& f) const;
  Array solve(const Array& rhs) const;
  // alpha*I + beta*(*this)
  TriDiag shifted(Real alpha, Real beta = 1.0) const;
  TriDiag shifted(const Array& alpha, Real beta) const;
};

// Radial Laplacian f'' + f'/r in flux form:
//   (Lf)_i = [r_{i+1/2}(f_{i+1}-f_i) - r_{i-1/2}(f_i-f_{i-1})] / (r_i h^2),
// Dirichlet ghost f_n = -f_{n-1} at r_max. Second order, and self-adjoint
// with respect to the weights w by construction. The r_{-1/2} = 0 face flux
// vanishes by itself, so no axis ghost value is ever read; sectors with
// fields vanishing on the axis differ only through their k^2/r^2 term.
TriDiag radial_laplacian_bands(const RadialGrid& g);
Array radial_laplacian(const RadialGrid& g, const Array& f);
RadialField radial_laplacian(const RadialField& f);

// End-corrected integral of a sampled density against 2 pi r dr.
Real integrate(const RadialGrid& g, const Array& f);

// Bilinear forms in the geometric weights w. The H1 form adds the face-based
// gradient term sum_faces 2 pi r_face h * df * dg, which equals (f, -Lap g)_w
// by summation by parts and is symmetric positive semidefinite.
Real l2_inner(const RadialGrid& g, const Array& f, const Array& gg);
Real grad_inner(const RadialGrid& g, const Array& f, const Array& gg);
Real h1_inner(const RadialGrid& g, const Array& f, const Array& gg);
Real l2_norm(const RadialGrid& g, const Array& f);
Real h1_norm(const RadialGrid& g, const Array& f);

Real l2_inner(const RadialField& f, const RadialField& g);
Real h1_inner(const RadialField& f, const RadialField& g);
Real l2_norm(const RadialField& f);
Real h1_norm(const RadialField& f);

// Plane-grid forms. Complex inner products conjugate the first argument.
Real integrate(const PlaneGrid& g, const ArrayXXr& f);
Complex l2_inner(const PlaneGrid& g, const ArrayXXc& f, const ArrayXXc& gg);
Real l2_inner(const PlaneGrid& g, const ArrayXXr& f, const ArrayXXr& gg);
Real l2_norm(const PlaneGrid& g, const ArrayXXc& f);
Real l2_norm(const PlaneGrid& g, const ArrayXXr& f);

void require_same_grid(const RadialField& f, const RadialField& g);
void require_same_grid(const RadialGrid& g, const Array& f);
template <typename A, typename B>
void require_same_grid(const PlaneField<A>& f, const PlaneField<B>& g) {
  if (f.grid != g.grid &&
      (f.grid->n != g.grid->n || f.grid->length != g.grid->length))
    throw GridMismatch("plane fields live on different grids");
}
void require_finite(const Array& f, const char* what);
void require_finite(const ArrayXXc& f, const char* what);

template <typename F>
RadialField sample(const RadialGridPtr& g, F&& fn) {
  RadialField out(g);
  for (Index i = 0; i < g->n; ++i) out.values[i] = fn(g->r[i]);
  return out;
}

template <typename Scalar, typename F>
PlaneField<Scalar> sample_plane(const PlaneGridPtr& g, F&& fn) {
  PlaneField<Scalar> out(g);
  for (Index j = 0; j < g->n; ++j)
    for (Index i = 0; i < g->n; ++i) out.values(i, j) = fn(g->x[i], g->x[j]);
  return out;
}

}  // namespace nematicon
