#pragma once

#include "nematicon/eigs.hpp"
#include "nematicon/groundstate.hpp"
#include "nematicon/types.hpp"

#include <vector>

// Second variation of the action around a stationary pair, resolved into
// angular harmonics exp(i k psi). Two operator families matter:
//
//   coupled: the (amplitude, angle) block operator that controls both
//            constrained minimality and orbital stability,
//   phase:   the scalar operator acting on the phase direction of the
//            beam, whose kernel is the profile itself.
//
// Operators are assembled against the quadrature weights and conjugated by
// W^{1/2} so ordinary Euclidean eigensolvers apply.
namespace nematicon::spectrum {

enum class Which { coupled, phase };

struct Options {
  int harmonics = 4;   // sectors k = 0 .. harmonics-1
  int per_sector = 2;  // eigenpairs resolved per sector
  Real tol = 1e-10;    // eigensolver residual relative to matrix scale
  uint64_t seed = 0x9e3779b97f4a7c15ull;
};

struct Sector {
  int k = 0;
  std::vector<Real> values;  // ascending
  Mat vectors;               // symmetrized coordinates, unit columns
  std::vector<Real> residuals;
  // Lowest eigenvalue after removing the symmetry directions of this
  // sector (charge at k = 0, translation at k = 1); equals values[0]
  // where no direction applies.
  Real deflated_lowest = 0;
};

struct Report {
  Which which = Which::coupled;
  Real scale = 0;       // Gershgorin bound of the k = 0 matrix
  Real kernel_tol = 0;  // 1e-6 * scale: |lambda| below this is "zero"
  std::vector<Sector> sectors;
  Real tau = 0;  // min of deflated_lowest across sectors
  bool coercive = false;
};

// Centered derivative of a cell-centered profile, even ghost at the axis
// and Dirichlet ghost at r_max.
Array radial_derivative(const RadialGrid& g, const Array& f);

// Second-variation matrix in sector k. symmetrized = false returns the raw
// operator (self-adjoint against the weights, not Euclidean-symmetric).
// Throws StaleGroundState when the pair's residual is too large for
// spectral statements to mean anything.
eigs::SpMat sector_matrix(const groundstate::GroundState& gs, Which which,
                          int k, bool symmetrized = true);

// Symmetry directions deflated in sector k (symmetrized coordinates,
// H1-weighted functionals); empty for k >= 2 and for phase at k >= 1.
Mat deflation_space(const groundstate::GroundState& gs, Which which, int k);

Report analyze(const groundstate::GroundState& gs, Which which,
               const Options& opts = {});

}  // namespace nematicon::spectrum
