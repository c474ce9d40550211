#include "nematicon/angle.hpp"
#include "nematicon/energy.hpp"
#include "nematicon/evolution.hpp"
#include "nematicon/grid.hpp"
#include "nematicon/rng.hpp"

#include <doctest.h>

#include <numbers>

using namespace nematicon;

namespace {
constexpr Real pi = std::numbers::pi;

Array smooth_field(const RadialGrid& g, uint64_t seed) {
  Array f = Array::Zero(g.n);
  uint64_t s = seed;
  for (int k = 0; k < 3; ++k) {
    const Real a = rng::uniform(s, -1.0, 1.0);
    const Real c = rng::uniform(s, 0.0, g.r_max / 3.0);
    const Real w = rng::uniform(s, 1.0, 4.0);
    f += a * (-(g.r - c).square() / (2.0 * w * w)).exp();
  }
  return f;
}
}  // namespace

TEST_SUITE("energy") {

TEST_CASE("decoupled Gaussian energies match closed forms") {
  // The report lives in the plain cell-weight metric, second order at the
  // axis, so the closed-form match needs a fine grid.
  const auto g = RadialGrid::make(20.0, 8192);
  const Real A = 1.3, s = 2.0;
  const RadialField u(g, A * (-g->r.square() / (2.0 * s * s)).exp());
  const RadialField theta(g);  // zero tilt
  const auto rep = energy::evaluate(u, theta, energy::Params{1.0, 1.0});
  // int |grad u|^2 = pi A^2 and Q = pi A^2 s^2 / 2 for a Gaussian.
  CHECK(rep.E == doctest::Approx(pi * A * A / 4.0).epsilon(1e-6));
  CHECK(rep.E_plus == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(rep.Q == doctest::Approx(pi * A * A * s * s / 2.0).epsilon(1e-6));
  CHECK(rep.E == doctest::Approx(rep.E_plus + rep.E_minus).epsilon(1e-14));
  CHECK(rep.S(0.3) == doctest::Approx(rep.E + 0.3 * rep.Q).epsilon(1e-14));
}

TEST_CASE("medium part matches its quadrature definition") {
  const auto g = RadialGrid::make(16.0, 512);
  const energy::Params p{0.7, 1.3};
  const Array u = smooth_field(*g, 5).abs() + 0.1;
  const Array th = 0.2 * (-g->r.square() / 25.0).exp();
  const auto rep =
      energy::evaluate(RadialField(g, u), RadialField(g, th), p);
  const Array ones = Array::Ones(g->n);
  const Real eplus_ref =
      0.25 * (p.lambda * grad_inner(*g, th, th) +
              p.q * l2_inner(*g, ones, Array(1.0 - (2.0 * th).cos())));
  const Real eminus_ref =
      0.25 * (grad_inner(*g, u, u) -
              2.0 * l2_inner(*g, Array(u.square()), (2.0 * th).sin()));
  CHECK(rep.E_plus == doctest::Approx(eplus_ref).epsilon(1e-12));
  CHECK(rep.E_minus == doctest::Approx(eminus_ref).epsilon(1e-12));
}

TEST_CASE("beam gradient matches difference quotients") {
  const auto g = RadialGrid::make(16.0, 512);
  const energy::Params p{1.0, 1.0};
  const Array u = smooth_field(*g, 7);
  const Array th = 0.25 * (-g->r.square() / 16.0).exp();
  const RadialField thf(g, th);
  const Array grad = energy::grad_u(*g, u, th);
  const Real eps = 1e-6;
  for (uint64_t seed : {21u, 22u, 23u}) {
    Array d = smooth_field(*g, seed);
    d /= l2_norm(*g, d);
    const Real ep = energy::evaluate(RadialField(g, u + eps * d), thf, p).E;
    const Real em = energy::evaluate(RadialField(g, u - eps * d), thf, p).E;
    const Real fd = (ep - em) / (2.0 * eps);
    CHECK(l2_inner(*g, grad, d) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("angle gradient matches difference quotients") {
  const auto g = RadialGrid::make(16.0, 512);
  const energy::Params p{0.8, 1.2};
  const Array u2 = smooth_field(*g, 9).square();
  const Array th = 0.3 * (-g->r.square() / 16.0).exp();
  const Array grad = energy::grad_theta(*g, u2, th, p);
  const Real eps = 1e-6;
  for (uint64_t seed : {31u, 32u, 33u}) {
    Array d = smooth_field(*g, seed);
    d /= l2_norm(*g, d);
    const Real fp = energy::angle_objective(*g, u2, th + eps * d, p);
    const Real fm = energy::angle_objective(*g, u2, th - eps * d, p);
    const Real fd = (fp - fm) / (2.0 * eps);
    CHECK(l2_inner(*g, grad, d) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("plane energy agrees with the radial one on an embedded pair") {
  const auto rg = RadialGrid::make(16.0, 4096);
  const auto pg = PlaneGrid::make(32.0, 128);
  SpectralWorkspace ws(pg);
  const energy::Params p{1.0, 1.0};

  const Array u = 1.2 * (-rg->r.square() / 8.0).exp();
  const Array th = 0.3 * (-rg->r.square() / 12.0).exp();
  const auto rep_r =
      energy::evaluate(RadialField(rg, u), RadialField(rg, th), p);

  const ArrayXXc u2d = evolution::embed_radial(*pg, *rg, u).cast<Complex>();
  const ArrayXXr th2d = evolution::embed_radial(*pg, *rg, th);
  const auto rep_p = energy::evaluate(ws, ComplexPlaneField(pg, u2d),
                                      RealPlaneField(pg, th2d), p);

  CHECK(rep_p.Q == doctest::Approx(rep_r.Q).epsilon(1e-6));
  CHECK(rep_p.E == doctest::Approx(rep_r.E).epsilon(1e-5));
  CHECK(rep_p.E_plus == doctest::Approx(rep_r.E_plus).epsilon(1e-5));
}

TEST_CASE("modified energy is the action with the solved angle") {
  const auto g = RadialGrid::make(16.0, 512);
  const energy::Params p{1.0, 1.0};
  const RadialField u(g, 1.4 * (-g->r.square() / 6.0).exp());
  const Real sigma = 0.3;
  const auto sol = angle::solve(u, p);
  const auto rep = energy::evaluate(u, sol.theta, p);
  CHECK(energy::modified(u, p, sigma) ==
        doctest::Approx(rep.S(sigma)).epsilon(1e-10));
  CHECK_THROWS_AS(energy::modified(u, p, 1.5), SigmaOutOfRange);
  CHECK_THROWS_AS(energy::modified(u, p, 0.0), SigmaOutOfRange);
}

TEST_CASE("parameters are validated") {
  CHECK_THROWS_AS((energy::Params{-1.0, 1.0}.validate()), InvalidParameter);
  CHECK_THROWS_AS((energy::Params{1.0, 0.0}.validate()), InvalidParameter);
}

}  // TEST_SUITE
