#include "nematicon/eigs.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <random>

namespace nematicon::eigs {

namespace {

using Triplet = Eigen::Triplet<Real>;

Mat orthonormalize(const Mat& C) {
  if (C.cols() == 0) return C;
  Eigen::HouseholderQR<Mat> qr(C);
  Mat Q = qr.householderQ() * Mat::Identity(C.rows(), C.cols());
  return Q;
}

struct Projector {
  const Mat& Q;
  void operator()(Vec& x) const {
    if (Q.cols() > 0) x -= Q * (Q.transpose() * x);
  }
};

// Three-term recurrence with two-pass full reorthogonalization against the
// stored basis (and the deflation space through proj).
template <typename Op>
void lanczos(const Op& op, const Projector& proj, Vec v, int steps, Mat& V,
             std::vector<Real>& alpha, std::vector<Real>& beta,
             std::mt19937_64& rng) {
  const Index dim = v.size();
  V.resize(dim, steps);
  alpha.clear();
  beta.clear();
  proj(v);
  v.normalize();

  std::normal_distribution<Real> gauss(0.0, 1.0);
  for (int j = 0; j < steps; ++j) {
    V.col(j) = v;
    Vec w = op(v);
    proj(w);
    const Real a = v.dot(w);
    alpha.push_back(a);
    w -= a * v;
    if (j > 0) w -= beta[j - 1] * V.col(j - 1);
    for (int pass = 0; pass < 2; ++pass)
      w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
    const Real b = w.norm();
    if (b < 1e-13) {
      // Invariant subspace reached; continue from a fresh direction.
      beta.push_back(0.0);
      for (Index i = 0; i < dim; ++i) w[i] = gauss(rng);
      proj(w);
      w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
      const Real nb = w.norm();
      if (nb < 1e-13) {
        V.conservativeResize(dim, j + 1);
        beta.pop_back();
        return;
      }
      v = w / nb;
      continue;
    }
    beta.push_back(b);
    v = w / b;
  }
  beta.pop_back();
}

void ritz(const std::vector<Real>& alpha, const std::vector<Real>& beta,
          Vec& values, Mat& coeff) {
  const int m = static_cast<int>(alpha.size());
  Mat T = Mat::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    T(i, i) = alpha[static_cast<size_t>(i)];
    if (i + 1 < m)
      T(i, i + 1) = T(i + 1, i) = beta[static_cast<size_t>(i)];
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(T);
  if (es.info() != Eigen::Success)
    throw EigenFailure("tridiagonal eigendecomposition failed");
  values = es.eigenvalues();
  coeff = es.eigenvectors();
}

}  // namespace

Real gershgorin_scale(const SpMat& A) {
  Vec row_sum = Vec::Zero(A.rows());
  for (int k = 0; k < A.outerSize(); ++k)
    for (SpMat::InnerIterator it(A, k); it; ++it)
      row_sum[it.row()] += std::abs(it.value());
  return row_sum.maxCoeff();
}

Result lowest_symmetric(const SpMat& A, const Options& opts,
                        const Mat& deflate) {
  const Index dim = A.rows();
  if (A.cols() != dim) throw InvalidParameter("matrix must be square");
  const Mat Q = orthonormalize(deflate);
  const Projector proj{Q};
  const Real scale = gershgorin_scale(A);
  const Index m_active = dim - Q.cols();
  if (opts.how_many > m_active)
    throw InvalidParameter("more eigenpairs requested than the subspace holds");

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<Real> gauss(0.0, 1.0);
  Vec v0(dim);
  for (Index i = 0; i < dim; ++i) v0[i] = gauss(rng);

  // Crude estimate of the bottom of the spectrum from a plain pass.
  Mat V;
  std::vector<Real> alpha, beta;
  {
    auto op = [&](const Vec& x) -> Vec { return A * x; };
    const int steps =
        static_cast<int>(std::min<Index>(m_active, 100));
    lanczos(op, proj, v0, steps, V, alpha, beta, rng);
  }
  Vec est_values;
  Mat est_coeff;
  ritz(alpha, beta, est_values, est_coeff);
  Real shift = est_values[0] -
               std::max({1e-10 * scale, 1e-6 * std::abs(est_values[0]), 1e-10});

  Result out;
  out.scale = scale;
  for (int round = 0; round < opts.max_rounds; ++round) {
    // Bordered factorization of [A - shift I, Q; Q^T, 0]: solving with
    // rhs [x; 0] inverts the restriction of A - shift I on the complement.
    const Index nb = dim + Q.cols();
    std::vector<Triplet> trip;
    trip.reserve(static_cast<size_t>(A.nonZeros()) +
                 2 * static_cast<size_t>(dim * Q.cols()) + 4);
    for (int k = 0; k < A.outerSize(); ++k)
      for (SpMat::InnerIterator it(A, k); it; ++it)
        trip.emplace_back(it.row(), it.col(), it.value());
    for (Index i = 0; i < dim; ++i) trip.emplace_back(i, i, -shift);
    for (Index c = 0; c < Q.cols(); ++c)
      for (Index i = 0; i < dim; ++i) {
        trip.emplace_back(i, dim + c, Q(i, c));
        trip.emplace_back(dim + c, i, Q(i, c));
      }
    SpMat K(nb, nb);
    K.setFromTriplets(trip.begin(), trip.end());
    K.makeCompressed();

    Eigen::SparseLU<SpMat> lu;
    lu.compute(K);
    if (lu.info() != Eigen::Success) {
      shift -= std::max(1e-8 * scale, 1e-8);
      continue;
    }

    auto op = [&](const Vec& x) -> Vec {
      Vec rhs = Vec::Zero(nb);
      rhs.head(dim) = x;
      Vec sol = lu.solve(rhs);
      Vec y = sol.head(dim);
      proj(y);
      return y;
    };

    const int steps = static_cast<int>(
        std::min<Index>(m_active, 60 + 20 * opts.how_many));
    for (Index i = 0; i < dim; ++i) v0[i] = gauss(rng);
    lanczos(op, proj, v0, steps, V, alpha, beta, rng);
    out.steps += static_cast<int>(alpha.size());

    Vec mu;
    Mat coeff;
    ritz(alpha, beta, mu, coeff);

    struct Cand {
      Real lambda;
      int idx;
    };
    std::vector<Cand> cands;
    for (int i = 0; i < mu.size(); ++i) {
      if (std::abs(mu[i]) < 1e-300) continue;
      cands.push_back({shift + 1.0 / mu[i], i});
    }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.lambda < b.lambda; });

    out.values.clear();
    out.residuals.clear();
    out.vectors.resize(dim, opts.how_many);
    bool ok = true;
    for (int i = 0; i < opts.how_many; ++i) {
      if (i >= static_cast<int>(cands.size())) {
        ok = false;
        break;
      }
      Vec x = V * coeff.col(cands[static_cast<size_t>(i)].idx);
      proj(x);
      x.normalize();
      const Real lambda = x.dot(A * x);
      Vec r = A * x - lambda * x;
      proj(r);
      const Real res = r.norm();
      out.values.push_back(lambda);
      out.residuals.push_back(res);
      out.vectors.col(i) = x;
      if (res > opts.tol * scale) ok = false;
    }
    if (ok) return out;
    if (!out.values.empty())
      shift = out.values[0] - std::max(1e-10 * scale, 1e-10);
  }
  throw EigenFailure("eigensolver failed to converge to the requested accuracy");
}

std::vector<Real> dense_lowest(const SpMat& A, int how_many,
                               const Mat& deflate) {
  Mat D = Mat(A);
  const Real scale = gershgorin_scale(A);
  if (deflate.cols() > 0) {
    const Mat Q = orthonormalize(deflate);
    const Mat P = Mat::Identity(D.rows(), D.cols()) - Q * Q.transpose();
    // Push the deflated directions far up the spectrum.
    D = P * D * P + (2.0 * scale + 1.0) * (Q * Q.transpose());
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(D);
  if (es.info() != Eigen::Success)
    throw EigenFailure("dense eigendecomposition failed");
  std::vector<Real> out;
  for (int i = 0; i < how_many && i < es.eigenvalues().size(); ++i)
    out.push_back(es.eigenvalues()[i]);
  return out;
}

}  // namespace nematicon::eigs
