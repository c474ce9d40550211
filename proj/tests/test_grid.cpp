#include "nematicon/grid.hpp"
#include "nematicon/rng.hpp"

#include <doctest.h>

#include <numbers>

using namespace nematicon;

namespace {
constexpr Real pi = std::numbers::pi;

Array rough_field(const RadialGrid& g, uint64_t seed) {
  Array f(g.n);
  uint64_t s = seed;
  for (Index i = 0; i < g.n; ++i) f[i] = rng::uniform(s, -1.0, 1.0);
  return f;
}
}  // namespace

TEST_SUITE("grid") {

TEST_CASE("quadrature is exact for 1 and r^2") {
  const auto g = RadialGrid::make(10.0, 256);
  CHECK(integrate(*g, Array::Ones(g->n)) ==
        doctest::Approx(pi * 100.0).epsilon(1e-13));
  // int r^2 dA = pi r_max^4 / 2
  CHECK(integrate(*g, g->r.square()) ==
        doctest::Approx(pi * 1e4 / 2.0).epsilon(1e-13));
}

TEST_CASE("quadrature is fourth order on a Gaussian") {
  // int exp(-r^2) dA = pi
  auto err = [](Index n) {
    const auto g = RadialGrid::make(12.0, n);
    return std::abs(integrate(*g, (-g->r.square()).exp()) - pi);
  };
  CHECK(err(512) < 5e-8);
  CHECK(err(2048) < 1e-9);
  CHECK(err(512) / err(1024) == doctest::Approx(16.0).epsilon(0.25));
}

TEST_CASE("laplacian of r^2 is exactly 4 away from the wall") {
  const auto g = RadialGrid::make(8.0, 128);
  const Array lf = radial_laplacian(*g, g->r.square());
  for (Index i = 0; i + 1 < g->n; ++i)
    CHECK(lf[i] == doctest::Approx(4.0).epsilon(1e-11));
}

TEST_CASE("laplacian of a constant vanishes away from the wall") {
  const auto g = RadialGrid::make(8.0, 128);
  const Array lf = radial_laplacian(*g, Array::Ones(g->n));
  for (Index i = 0; i + 1 < g->n; ++i) CHECK(std::abs(lf[i]) < 1e-13);
}

TEST_CASE("laplacian converges at second order") {
  auto sup_err = [](Index n) {
    const auto g = RadialGrid::make(8.0, n);
    const Array f = (-g->r.square()).exp();
    const Array exact = (4.0 * g->r.square() - 4.0) * f;
    const Array lf = radial_laplacian(*g, f);
    Real e = 0;
    for (Index i = 0; i < g->n; ++i)
      if (g->r[i] < 4.0) e = std::max(e, std::abs(lf[i] - exact[i]));
    return e;
  };
  const Real ratio = sup_err(128) / sup_err(256);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("laplacian is self-adjoint against the cell weights") {
  const auto g = RadialGrid::make(10.0, 200);
  const Array f = rough_field(*g, 11);
  const Array h = rough_field(*g, 22);
  const Real lhs = l2_inner(*g, f, radial_laplacian(*g, h));
  const Real rhs = l2_inner(*g, radial_laplacian(*g, f), h);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));

  // Summation by parts: the face-based gradient form is (f, -Lap h)_w.
  CHECK(grad_inner(*g, f, h) == doctest::Approx(-lhs).epsilon(1e-11));
  CHECK(grad_inner(*g, f, f) >= 0);
  CHECK(h1_inner(*g, f, h) ==
        doctest::Approx(l2_inner(*g, f, h) + grad_inner(*g, f, h))
            .epsilon(1e-13));
}

TEST_CASE("tridiagonal solve inverts apply") {
  const auto g = RadialGrid::make(10.0, 200);
  const TriDiag m = radial_laplacian_bands(*g).shifted(1.0, -0.5);
  const Array x = rough_field(*g, 33);
  const Array back = m.solve(m.apply(x));
  CHECK((back - x).abs().maxCoeff() < 1e-12);
}

TEST_CASE("plane forms integrate constants and conjugate first arguments") {
  const auto g = PlaneGrid::make(20.0, 32);
  ArrayXXr ones = ArrayXXr::Ones(g->n, g->n);
  CHECK(integrate(*g, ones) == doctest::Approx(400.0).epsilon(1e-13));

  ArrayXXc f = ArrayXXc::Constant(g->n, g->n, Complex(0, 1));
  ArrayXXc h = ArrayXXc::Constant(g->n, g->n, Complex(1, 0));
  const Complex ip = l2_inner(*g, f, h);
  CHECK(ip.real() == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(ip.imag() == doctest::Approx(-400.0).epsilon(1e-13));
}

TEST_CASE("invalid grids are refused") {
  CHECK_THROWS_AS(RadialGrid::make(0.0, 128), InvalidGrid);
  CHECK_THROWS_AS(RadialGrid::make(-1.0, 128), InvalidGrid);
  CHECK_THROWS_AS(RadialGrid::make(10.0, 0), InvalidGrid);
  CHECK_THROWS_AS(PlaneGrid::make(40.0, 100), InvalidGrid);
  CHECK_THROWS_AS(PlaneGrid::make(40.0, 4), InvalidGrid);
  CHECK_THROWS_AS(PlaneGrid::make(0.0, 64), InvalidGrid);
}

TEST_CASE("mismatched grids are rejected in field forms") {
  const RadialField a(RadialGrid::make(10.0, 128));
  const RadialField b(RadialGrid::make(10.0, 256));
  CHECK_THROWS_AS(l2_inner(a, b), GridMismatch);
}

TEST_CASE("non-finite fields are rejected") {
  const auto g = RadialGrid::make(10.0, 64);
  Array f = Array::Ones(g->n);
  f[10] = std::numeric_limits<Real>::quiet_NaN();
  CHECK_THROWS_AS(require_finite(f, "f"), NonFiniteField);
}

}  // TEST_SUITE
