#pragma once

#include "nematicon/energy.hpp"
#include "nematicon/fft.hpp"
#include "nematicon/grid.hpp"

namespace nematicon::angle {

// The medium response Theta(u): unique minimizer of F_u over 0 <= theta <= pi/4,
// equivalently the solution of
//   -lambda Lap theta + q sin 2theta = 2|u|^2 cos 2theta.
// F_u is convex on [0, pi/4] (both 1 - cos 2theta and -sin 2theta have
// nonnegative second derivative there against the signs they carry), so Newton
// steps clipped back into the box converge from any start.

struct Options {
  Real tol = 0;        // sup-norm residual target; 0 picks the grid default
                       // (1e-10 radial, 1e-8 plane)
  int max_iter = 200;
};

struct RadialSolution {
  RadialField theta;
  Real residual = 0;
  int iterations = 0;
  bool converged = false;
};

struct PlaneSolution {
  RealPlaneField theta;
  Real residual = 0;
  int iterations = 0;
  bool converged = false;
};

// Radial solve: Newton with a tridiagonal direct solve per iteration.
RadialSolution solve(const RadialField& u, const energy::Params& p,
                     const Options& opts = {}, const Array* warm = nullptr);
RadialSolution solve_intensity(const RadialGridPtr& g, const Array& u2,
                               const energy::Params& p, const Options& opts = {},
                               const Array* warm = nullptr);

// Plane solve: Newton with preconditioned conjugate-gradient inner solves
// (preconditioner: (lambda|k|^2 + mean diagonal)^{-1} in Fourier space).
PlaneSolution solve(SpectralWorkspace& ws, const ComplexPlaneField& u,
                    const energy::Params& p, const Options& opts = {},
                    const ArrayXXr* warm = nullptr);
PlaneSolution solve_intensity(SpectralWorkspace& ws, const PlaneGridPtr& g,
                              const ArrayXXr& u2, const energy::Params& p,
                              const Options& opts = {},
                              const ArrayXXr* warm = nullptr);

// Empirical Lipschitz probe of u -> Theta(u): ratios
// ||Theta(u + s h) - Theta(u)||_H1 / ||s h||_H1 for each scale s.
struct ContinuityRow {
  Real scale, du_h1, dtheta_h1, ratio;
};
std::vector<ContinuityRow> continuity_probe(const RadialField& u,
                                            const RadialField& h,
                                            const std::vector<Real>& scales,
                                            const energy::Params& p);

}  // namespace nematicon::angle
