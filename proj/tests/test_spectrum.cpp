#include "nematicon/energy.hpp"
#include "nematicon/spectrum.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace nematicon;

TEST_SUITE("spectrum") {

TEST_CASE("radial derivative is exact on quadratics away from the wall") {
  const auto g = RadialGrid::make(10.0, 200);
  const Array d = spectrum::radial_derivative(*g, g->r.square());
  for (Index i = 0; i + 1 < g->n; ++i)
    CHECK(d[i] == doctest::Approx(2.0 * g->r[i]).epsilon(1e-11));
}

TEST_CASE("quadratic form matches second differences of the action") {
  const auto& gs = testing::small_ground_state();
  const auto& g = *gs.grid;
  const auto A = spectrum::sector_matrix(gs, spectrum::Which::coupled, 0,
                                         /*symmetrized=*/false);

  const Array eta = (-(g.r - 1.5).square() / 6.0).exp();
  const Array vth = 0.5 * (-(g.r - 3.0).square() / 8.0).exp();

  Vec x(2 * g.n);
  x.head(g.n) = eta.matrix();
  x.tail(g.n) = vth.matrix();
  const Vec y = A * x;
  const Real quad = (g.w * eta * y.head(g.n).array()).sum() +
                    (g.w * vth * y.tail(g.n).array()).sum();

  auto action = [&](Real t) {
    const RadialField u(gs.grid, gs.v + t * eta);
    const RadialField th(gs.grid, gs.phi + t * vth);
    return energy::evaluate(u, th, gs.params).S(gs.sigma);
  };
  const Real t = 1e-3;
  const Real second = (action(t) - 2.0 * action(0.0) + action(-t)) / (t * t);

  CHECK(quad == doctest::Approx(2.0 * second).epsilon(1e-4));
}

TEST_CASE("phase operator annihilates the profile") {
  const auto& gs = testing::small_ground_state();
  const auto& g = *gs.grid;
  const auto A = spectrum::sector_matrix(gs, spectrum::Which::phase, 0);
  Vec x = (g.w.sqrt() * gs.v).matrix();
  x.normalize();
  const Real scale = eigs::gershgorin_scale(A);
  CHECK((A * x).norm() < 1e-6 * scale);
}

TEST_CASE("zero modes and signs across sectors") {
  const auto& gs = testing::small_ground_state();
  const auto& g = *gs.grid;
  spectrum::Options opts;
  opts.harmonics = 2;
  const auto rep = spectrum::analyze(gs, spectrum::Which::coupled, opts);
  REQUIRE(rep.sectors.size() == 2);

  // k = 0 carries the single unstable direction; deflating the charge
  // constraint makes it positive.
  CHECK(rep.sectors[0].values[0] < 0.0);
  CHECK(rep.sectors[0].deflated_lowest > 0.0);

  // k = 1 carries the translation kernel.
  const auto& sec1 = rep.sectors[1];
  CHECK(std::abs(sec1.values[0]) < rep.kernel_tol);
  Vec t(2 * g.n);
  t.head(g.n) = (g.w.sqrt() * spectrum::radial_derivative(g, gs.v)).matrix();
  t.tail(g.n) = (g.w.sqrt() * spectrum::radial_derivative(g, gs.phi)).matrix();
  t.normalize();
  CHECK(std::abs(t.dot(sec1.vectors.col(0))) > 0.999);

  CHECK(rep.tau > 0.0);
  CHECK(rep.coercive);
}

TEST_CASE("phase sectors are nonnegative after deflation") {
  const auto& gs = testing::small_ground_state();
  spectrum::Options opts;
  opts.harmonics = 2;
  const auto rep = spectrum::analyze(gs, spectrum::Which::phase, opts);
  CHECK(std::abs(rep.sectors[0].values[0]) < rep.kernel_tol);
  CHECK(rep.sectors[0].deflated_lowest > 0.0);
  CHECK(rep.sectors[1].values[0] > 0.0);
  CHECK(rep.coercive);
}

TEST_CASE("stale pairs are rejected") {
  auto gs = testing::small_ground_state();
  gs.residual = 1e-3;
  CHECK_THROWS_AS(spectrum::sector_matrix(gs, spectrum::Which::coupled, 0),
                  StaleGroundState);
  CHECK_THROWS_AS(spectrum::analyze(gs, spectrum::Which::phase),
                  StaleGroundState);
}

}  // TEST_SUITE
