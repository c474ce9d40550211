#pragma once

#include "nematicon/angle.hpp"
#include "nematicon/energy.hpp"
#include "nematicon/grid.hpp"
#include "nematicon/groundstate.hpp"
#include "nematicon/types.hpp"

// Constrained minimization at fixed propagation constant sigma instead of
// fixed charge. The action S(u) = E(u, Theta(u)) + sigma*Q(u) is minimized
// over the manifold of nontrivial profiles where d/dr S(r*u) = 0 at r = 1.
// Every direction w on the unit H1 sphere that dips below the quadratic
// barrier carries exactly one such scale r, so the search runs over the
// sphere with each iterate pulled back onto the manifold by a 1-D root find.
namespace nematicon::nehari {

struct Options {
  // Convergence is the sup norm of both stationary-equation residuals.
  Real tol = 1e-8;
  int max_iter = 5000;
  // Step for the H1-preconditioned sphere descent.
  Real step = 0.25;
  // Upper bound for the scale root search.
  Real r_cap = 1e3;
  // Scaled iterates below this H1 norm count as a collapse onto the
  // sphere boundary and trigger a restart.
  Real delta = 1.0;
  // Width of the initial Gaussian direction.
  Real width = 8.0;
  // Newton polish: at most polish_max steps once the descent residual
  // drops under polish_trigger.
  int polish_max = 30;
  Real polish_trigger = 1e-3;
  angle::Options angle_opts;
  // Optional starting direction (any nonzero profile; normalized here).
  const Array* initial = nullptr;
};

// Whether the direction admits a scale at all:
// int |grad w|^2 - 2(1-sigma) int w^2 < 0.
bool in_sphere(const RadialGrid& g, const Array& w, Real sigma);

// The unique r with d/dr S(r*w) = 0 for an admissible direction w.
// theta_cache, when given, warm-starts the angle solves across calls and
// is left holding the angle of the returned scale.
Real nehari_scale(const RadialGridPtr& grid, const Array& w, Real sigma,
                  const energy::Params& p, const angle::Options& aopts = {},
                  Array* theta_cache = nullptr, Real r_cap = 1e3);

// Minimize the action at fixed sigma. Returns the stationary pair with the
// charge it happens to carry; solver tag "nehari".
groundstate::GroundState minimize_action(const RadialGridPtr& grid, Real sigma,
                                         const energy::Params& p,
                                         const Options& opts = {});

}  // namespace nematicon::nehari
