#include "nematicon/eigs.hpp"
#include "nematicon/rng.hpp"

#include <doctest.h>

#include <vector>

using namespace nematicon;

namespace {

// 1-D Dirichlet Laplacian plus a potential well: simple, symmetric, and
// with a known-ish bottom of the spectrum to compare against dense results.
eigs::SpMat test_operator(Index n, Real well) {
  std::vector<Eigen::Triplet<Real>> trip;
  const Real h = 10.0 / static_cast<Real>(n);
  for (Index i = 0; i < n; ++i) {
    const Real x = (static_cast<Real>(i) + 0.5) * h - 5.0;
    trip.emplace_back(i, i, 2.0 / (h * h) - well * std::exp(-x * x));
    if (i > 0) trip.emplace_back(i, i - 1, -1.0 / (h * h));
    if (i + 1 < n) trip.emplace_back(i, i + 1, -1.0 / (h * h));
  }
  eigs::SpMat A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  return A;
}

}  // namespace

TEST_SUITE("eigs") {

TEST_CASE("lowest pairs match the dense solver") {
  const auto A = test_operator(400, 8.0);
  eigs::Options opts;
  opts.how_many = 3;
  const auto res = eigs::lowest_symmetric(A, opts);
  const auto dense = eigs::dense_lowest(A, 3);

  REQUIRE(res.values.size() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(res.values[i] ==
          doctest::Approx(dense[i]).epsilon(1e-9).scale(res.scale));
  CHECK(res.values[0] <= res.values[1]);
  CHECK(res.values[1] <= res.values[2]);
  for (const Real r : res.residuals) CHECK(r <= opts.tol * res.scale);
}

TEST_CASE("eigenvectors satisfy the eigenvalue equation") {
  const auto A = test_operator(300, 5.0);
  eigs::Options opts;
  opts.how_many = 2;
  const auto res = eigs::lowest_symmetric(A, opts);
  for (int i = 0; i < 2; ++i) {
    const Vec x = res.vectors.col(i);
    CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const Real lam = res.values[i];
    CHECK((A * x - lam * x).norm() <= opts.tol * res.scale);
  }
}

TEST_CASE("deflation removes a chosen direction") {
  const auto A = test_operator(300, 8.0);
  const auto full = eigs::lowest_symmetric(A, {.how_many = 2});

  // Deflate the exact ground direction: the constrained bottom must be the
  // old second eigenvalue.
  Mat q(300, 1);
  q.col(0) = full.vectors.col(0);
  const auto defl = eigs::lowest_symmetric(A, {.how_many = 1}, q);
  CHECK(defl.values[0] ==
        doctest::Approx(full.values[1]).epsilon(1e-8).scale(full.scale));
  CHECK(std::abs(q.col(0).dot(defl.vectors.col(0))) < 1e-8);

  const auto dense = eigs::dense_lowest(A, 1, q);
  CHECK(dense[0] ==
        doctest::Approx(full.values[1]).epsilon(1e-8).scale(full.scale));
}

TEST_CASE("gershgorin scale bounds the spectrum") {
  const auto A = test_operator(200, 3.0);
  const Real scale = eigs::gershgorin_scale(A);
  const auto res = eigs::lowest_symmetric(A, {.how_many = 1});
  CHECK(std::abs(res.values[0]) <= scale);
  CHECK(res.scale == doctest::Approx(scale));
}

}  // TEST_SUITE
