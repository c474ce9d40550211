#pragma once

#include "nematicon/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

// End-to-end acceptance checks exercising the whole pipeline at a stated
// scale: solver fidelity, gradient consistency, ground states and their
// monotonicity in charge, the fixed-frequency route, spectral structure,
// conservation and orbital stability under propagation, and tail decay.
// The same checks back the standalone acceptance binary (desk scale) and
// `verify --quick` (reduced scale, looser resolution-bound tolerances).
namespace nematicon::verify {

struct Scale {
  std::string name;

  Index radial_n = 2048;
  Real r_max = 40.0;
  Index plane_n = 256;
  Real plane_L = 40.0;

  // Threshold bracket for the charge where ground states appear.
  Real bracket_lo = 2.0;
  Real bracket_hi = 4.0;
  Real bracket_tol = 0.02;
  int sweep_points = 8;

  Real dz = 2e-3;
  Real z_drift = 20.0;  // conservation + profile horizon
  Real z_orbit = 40.0;  // perturbed-run horizon
  int free_steps = 1000;

  // Resolution-bound tolerances (the solver-bound ones are fixed).
  Real profile_dev_tol = 1e-4;
  Real phase_slope_tol = 1e-3;
  Real drift_q_tol = 1e-10;
  Real drift_e_tol = 1e-6;
  Real ratio_lo = 2.5, ratio_hi = 6.0;
  Real free_l2_tol = 1e-6;
  double drift_budget_s = 900.0;
};

Scale desk();
Scale quick();

struct CheckResult {
  int number = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct Suite {
  std::vector<CheckResult> checks;
  bool all_pass = false;
};

// Runs every check in order, printing one PASS/FAIL line each to log as it
// completes. Artifacts (trace tables, the perturbed-run envelope) land in
// out_dir, which is created when missing.
Suite run(const Scale& scale, const std::string& out_dir, std::ostream& log);

}  // namespace nematicon::verify
