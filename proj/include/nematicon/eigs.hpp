#pragma once

#include "nematicon/types.hpp"

#include <Eigen/Sparse>

#include <cstdint>
#include <vector>

// Lowest eigenpairs of sparse symmetric matrices, optionally restricted to
// the orthogonal complement of a handful of given directions. Sized for the
// operators this project produces: a few thousand rows, a few nonzeros per
// row, and only the bottom of the spectrum of interest.
namespace nematicon::eigs {

using SpMat = Eigen::SparseMatrix<Real>;

struct Options {
  int how_many = 1;
  Real tol = 1e-10;  // residual bound relative to the Gershgorin scale
  int max_rounds = 4;
  uint64_t seed = 0x9e3779b97f4a7c15ull;
};

struct Result {
  std::vector<Real> values;     // ascending
  Mat vectors;                  // matching columns, unit Euclidean norm
  std::vector<Real> residuals;  // ||A x - lambda x|| within the subspace
  Real scale = 0;               // Gershgorin bound used for tolerances
  int steps = 0;
};

// Gershgorin bound max_i (|a_ii| + sum_{j != i} |a_ij|).
Real gershgorin_scale(const SpMat& A);

// Shift-invert Lanczos with full reorthogonalization. When deflate has
// columns, the search runs in their orthogonal complement (enforced through
// a bordered factorization, so iterates stay in the subspace exactly).
Result lowest_symmetric(const SpMat& A, const Options& opts,
                        const Mat& deflate = Mat());

// Dense cross-check for small problems; same subspace convention.
std::vector<Real> dense_lowest(const SpMat& A, int how_many,
                               const Mat& deflate = Mat());

}  // namespace nematicon::eigs
