#include "nematicon/nehari.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace nematicon;

TEST_SUITE("nehari") {

TEST_CASE("membership follows the quadratic barrier") {
  const auto g = RadialGrid::make(30.0, 512);
  const Real sigma = 0.5;
  // For w = exp(-r^2/(2 s^2)) the Rayleigh quotient of the gradient is
  // 1/s^2, so membership means 1/s^2 < 2(1 - sigma) = 1.
  const Array wide = (-g->r.square() / (2.0 * 4.0)).exp();    // s = 2
  const Array narrow = (-g->r.square() / (2.0 * 0.25)).exp(); // s = 1/2
  CHECK(nehari::in_sphere(*g, wide, sigma));
  CHECK_FALSE(nehari::in_sphere(*g, narrow, sigma));
}

TEST_CASE("scale is a fixed point on the manifold") {
  const auto g = RadialGrid::make(30.0, 512);
  const energy::Params p{1.0, 1.0};
  const Real sigma = 0.25;
  const Array w = (-g->r.square() / (2.0 * 9.0)).exp();
  const Real r = nehari::nehari_scale(g, w, sigma, p);
  CHECK(r > 0.0);

  // u = r w satisfies d/ds S(s u)|_{s=1} = 0, so the scale of the
  // normalized direction must reproduce the norm itself.
  const Array u = r * w;
  const Real nrm = h1_norm(*g, u);
  const Real r2 = nehari::nehari_scale(g, Array(u / nrm), sigma, p);
  CHECK(r2 == doctest::Approx(nrm).epsilon(1e-6));
}

TEST_CASE("directions above the barrier admit no scale") {
  const auto g = RadialGrid::make(30.0, 512);
  const Array narrow = (-g->r.square() / (2.0 * 0.25)).exp();
  CHECK_THROWS_AS(nehari::nehari_scale(g, narrow, 0.5, energy::Params{1.0, 1.0}),
                  NotInSphere);
}

TEST_CASE("sigma domain is validated up front") {
  const auto g = RadialGrid::make(20.0, 128);
  const energy::Params p{1.0, 1.0};
  CHECK_THROWS_AS(nehari::minimize_action(g, 1.2, p), SigmaOutOfRange);
  CHECK_THROWS_AS(nehari::minimize_action(g, 0.0, p), SigmaOutOfRange);
  CHECK_THROWS_AS(nehari::minimize_action(g, -0.3, p), SigmaOutOfRange);
}

TEST_CASE("action minimizer agrees with the fixed-charge route") {
  const auto& gs = testing::small_ground_state();
  const auto ne = nehari::minimize_action(gs.grid, gs.sigma, gs.params);

  CHECK(ne.solver == "nehari");
  CHECK(ne.residual < 1e-8);
  CHECK(ne.a == doctest::Approx(gs.a).epsilon(1e-3));
  CHECK(ne.report.E == doctest::Approx(gs.report.E).epsilon(1e-5));

  // At a manifold point the constraint turns the level into the medium
  // energy alone: S = E_plus.
  CHECK(ne.report.S(ne.sigma) ==
        doctest::Approx(ne.report.E_plus).epsilon(1e-7));
  CHECK(ne.report.E_plus > 0.0);
}

}  // TEST_SUITE
