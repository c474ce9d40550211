#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nematicon/angle.hpp"
#include "nematicon/energy.hpp"
#include "nematicon/grid.hpp"

namespace nematicon::groundstate {

// A converged stationary pair (v, phi) with frequency sigma:
//   -Lap v + 2 sigma v - 2 v sin 2phi = 0
//   -lambda Lap phi + q sin 2phi - 2 v^2 cos 2phi = 0
// a is the charge constraint ||v||^2 (fixed input for the charge solver,
// an output for the fixed-frequency solver).
struct GroundState {
  RadialGridPtr grid;
  Array v, phi;
  Real sigma = 0;
  Real a = 0;
  Real residual = 0;  // max of the sup-norm residuals of the two equations
  energy::Report report;
  energy::Params params;
  std::string solver;  // "charge-flow" or "nehari"
  int iterations = 0;
};

struct FlowOptions {
  Real tol = 1e-10;          // final sup-norm residual (after Newton polish)
  Real flow_tol = 2e-5;      // hand over to Newton once the flow is this good
  Real step = 0;             // 0 picks a default per variant
  bool precondition = true;  // apply (c - Lap/2)^{-1} to the flow gradient
  int max_iter = 40000;
  int polish_max = 12;
  Real width = 3.0;              // initial Gaussian width
  const Array* initial = nullptr;  // overrides the Gaussian start
  Real vanish_floor = 1e-8;      // sup|u| < floor * initial sup => vanished
  angle::Options angle_opts{};
};

// What the flow/polish actually did; returned alongside the state so callers
// can report "no ground state" evidence instead of a bare failure.
struct Diagnostics {
  int flow_iterations = 0;
  int polish_iterations = 0;
  Real flow_residual = 0;
  Real residual = 0;
  Real sigma = 0;
  Real J = 0;
  Real sup_ratio = 0;  // final sup|u| over initial sup|u|
  bool vanished = false;
  std::string verdict;  // "ground-state" | "no-ground-state" | "no-convergence"
};

struct ChargeResult {
  std::optional<GroundState> state;
  Diagnostics diag;
};

// Constrained Rayleigh extraction of the multiplier:
// 2 sigma = (-int |grad u|^2 + 2 int |u|^2 sin 2theta) / ||u||^2.
Real extract_sigma(const RadialGrid& g, const Array& v, const Array& phi);

// Residual field of the stationary beam equation at given sigma.
Array beam_residual(const RadialGrid& g, const Array& v, const Array& phi,
                    Real sigma);

// Minimize E over the charge sphere ||u||^2 = a: projected gradient flow with
// per-iterate angle solves and rescaling, then a Newton polish of the coupled
// system in (v, phi, sigma) with the charge constraint pinned.
//
// A subcritical charge has no ground state: the flow either vanishes in sup
// norm or settles on a spread box-sized state with J >= 0 and sigma <= 0.
// Both signatures are classified as "no-ground-state" in the diagnostics.
ChargeResult minimize_charge(const RadialGridPtr& grid, Real a,
                             const energy::Params& p, FlowOptions opts = {});

// Newton refinement of an approximate state. Solves the KKT system for
// (dv, dphi, dsigma) with constraint ||v||^2 = a. Updates all fields.
void polish(GroundState& gs, int max_iter = 12, Real tol = 1e-10);

struct Threshold {
  Real a0 = 0, lo = 0, hi = 0;
  int evaluations = 0;
};

// Bisect the existence threshold: minimize_charge must report no ground state
// at a_lo and a ground state at a_hi.
Threshold locate_threshold(const RadialGridPtr& grid, const energy::Params& p,
                           Real a_lo, Real a_hi, Real tol_a,
                           FlowOptions opts = {});

struct SweepPoint {
  Real a = 0, sigma = 0, J = 0, residual = 0;
  bool ok = false;
  std::string verdict;
};

struct ChargeSweep {
  std::vector<SweepPoint> points;
  // Forward difference quotients (sigma_{i+1}-sigma_i)/(a_{i+1}-a_i) over
  // consecutive successful points.
  std::vector<Real> dini_quotients;
};

// One minimize_charge per entry, warm-started from the previous profile
// rescaled to the new charge. Individual failures are recorded, not thrown.
ChargeSweep sweep_charge(const RadialGridPtr& grid, const energy::Params& p,
                         const std::vector<Real>& charges, FlowOptions opts = {});

}  // namespace nematicon::groundstate
