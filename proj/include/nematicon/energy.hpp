#pragma once

#include "nematicon/fft.hpp"
#include "nematicon/grid.hpp"

namespace nematicon::energy {

struct Params {
  Real lambda = 1.0;  // elastic constant
  Real q = 1.0;       // pre-tilt constant
  void validate() const;
};

// Energy of a beam/angle pair, split into the nonnegative medium part and the
// beam part:
//   E_plus  = 1/4 int lambda|grad theta|^2 + q(1 - cos 2theta)
//   E_minus = 1/4 int |grad u|^2 - 2|u|^2 sin 2theta
//   Q       = 1/2 int |u|^2
// E = E_plus + E_minus by construction; the action at frequency sigma is
// S = E + sigma Q.
struct Report {
  Real E = 0, E_plus = 0, E_minus = 0, Q = 0;
  Real S(Real sigma) const { return E + sigma * Q; }
};

Report evaluate(const RadialField& u, const RadialField& theta, const Params& p);
Report evaluate(SpectralWorkspace& ws, const ComplexPlaneField& u,
                const RealPlaneField& theta, const Params& p);

// L2 gradient of E in u at fixed theta: 1/2(-Lap u - 2 u sin 2theta).
// (grad, h)_w matches directional difference quotients of E exactly because
// every form here is built on the same weights as the Laplacian.
Array grad_u(const RadialGrid& g, const Array& u, const Array& theta);
ArrayXXc grad_u(SpectralWorkspace& ws, const ArrayXXc& u, const ArrayXXr& theta);

// Angle functional at fixed intensity u2 = |u|^2 and its L2 gradient
//   F_u(theta) = lambda int |grad theta|^2 + q int (1 - cos 2theta)
//                - 2 int u2 sin 2theta
//   grad = 2(-lambda Lap theta + q sin 2theta - 2 u2 cos 2theta).
Real angle_objective(const RadialGrid& g, const Array& u2, const Array& theta,
                     const Params& p);
Array grad_theta(const RadialGrid& g, const Array& u2, const Array& theta,
                 const Params& p);
Real angle_objective(SpectralWorkspace& ws, const ArrayXXr& u2,
                     const ArrayXXr& theta, const Params& p);
ArrayXXr grad_theta(SpectralWorkspace& ws, const ArrayXXr& u2,
                    const ArrayXXr& theta, const Params& p);

// Modified energy E_sigma(u) = E(u, Theta(u)) + sigma/2 ||u||^2; solves the
// angle subproblem internally. Valid only for 0 < sigma < 1 (no stationary
// states exist at sigma >= 1).
Real modified(const RadialField& u, const Params& p, Real sigma);

}  // namespace nematicon::energy
