#include "nematicon/angle.hpp"
#include "nematicon/evolution.hpp"

#include "support.hpp"

#include <cmath>
#include <complex>

#include <doctest.h>

using namespace nematicon;

namespace {

ArrayXXc gaussian_beam(const PlaneGridPtr& g, Real amp, Real s2) {
  return sample_plane<Complex>(g, [&](Real x, Real y) {
           return amp * std::exp(-(x * x + y * y) / (2 * s2));
         })
      .values;
}

}  // namespace

TEST_SUITE("evolution") {

TEST_CASE("free propagation matches the spreading Gaussian") {
  const auto g = PlaneGrid::make(30.0, 128);
  const Real s2 = 4.0;
  const ArrayXXc u0 = gaussian_beam(g, 1.0, s2);

  evolution::Options opts;
  opts.dz = 1e-2;
  opts.couple = false;
  const auto res = evolution::propagate(g, u0, 1.0, energy::Params{}, opts);
  CHECK(res.steps == 100);
  CHECK(res.z == doctest::Approx(1.0));

  const Complex w(s2, res.z);
  const ArrayXXc exact = sample_plane<Complex>(g, [&](Real x, Real y) {
                           return s2 / w * std::exp(-(x * x + y * y) / (2.0 * w));
                         }).values;
  const Real rel = l2_norm(*g, ArrayXXc(res.u - exact)) / l2_norm(*g, exact);
  CHECK(rel < 1e-9);
}

TEST_CASE("coupled stepping conserves the charge") {
  const auto& gs = testing::small_ground_state();
  const auto g = PlaneGrid::make(40.0, 128);
  const ArrayXXr emb = evolution::embed_radial(*g, *gs.grid, gs.v);
  const ArrayXXc u0 = emb.cast<Complex>();

  const auto res = evolution::propagate(g, u0, 0.1, gs.params);
  CHECK(res.steps == 50);
  CHECK_FALSE(res.box_warning);
  const Real q0 = integrate(*g, ArrayXXr(u0.abs2()));
  const Real q1 = integrate(*g, ArrayXXr(res.u.abs2()));
  CHECK(q1 == doctest::Approx(q0).epsilon(1e-12));
  CHECK(res.trace.size() >= 2);
  CHECK(res.trace.back().z == doctest::Approx(res.z));
}

TEST_CASE("orbital distance recovers an exact lattice frame") {
  const auto g = PlaneGrid::make(20.0, 64);
  SpectralWorkspace ws(g);
  const ArrayXXc ref = gaussian_beam(g, 1.3, 1.0);
  const auto phi = angle::solve_intensity(ws, g, ref.abs2(), energy::Params{});
  REQUIRE(phi.converged);

  const Real dx = 5 * g->h;
  ArrayXXc u(g->n, g->n);
  spectral_shift(ws, ref, dx, 0.0, u);
  u *= std::exp(Complex(0, 0.7));

  const auto d = evolution::orbital_distance(ws, u, ref, phi.theta.values,
                                             energy::Params{});
  CHECK(d.total < 1e-5);
  CHECK(d.frame.dx == doctest::Approx(dx).epsilon(1e-6));
  CHECK(std::abs(d.frame.dy) < 1e-6);
  CHECK(d.frame.alpha == doctest::Approx(0.7).epsilon(1e-6));
}

TEST_CASE("orbital distance resolves a subpixel shift") {
  const auto g = PlaneGrid::make(20.0, 64);
  SpectralWorkspace ws(g);
  const ArrayXXc ref = gaussian_beam(g, 1.3, 1.0);
  const auto phi = angle::solve_intensity(ws, g, ref.abs2(), energy::Params{});

  ArrayXXc u(g->n, g->n);
  spectral_shift(ws, ref, 0.37, -0.21, u);
  u *= std::exp(Complex(0, 0.7));

  const auto d = evolution::orbital_distance(ws, u, ref, phi.theta.values,
                                             energy::Params{});
  CHECK(std::abs(d.frame.dx - 0.37) < 0.02);
  CHECK(std::abs(d.frame.dy + 0.21) < 0.02);
  CHECK(std::abs(d.frame.alpha - 0.7) < 0.02);
  CHECK(d.total < 0.02 * h1_norm(ws, ref));
}

TEST_CASE("radial embedding reproduces profiles on the plane") {
  const auto rg = RadialGrid::make(20.0, 1024);
  const auto pg = PlaneGrid::make(30.0, 64);

  // Linear data interpolates exactly away from the axis kink of |x|.
  const ArrayXXr lin = evolution::embed_radial(*pg, *rg, rg->r);
  for (Index j = 0; j < pg->n; ++j)
    for (Index i = 0; i < pg->n; ++i) {
      const Real rho = std::hypot(pg->x[i], pg->x[j]);
      if (rho >= rg->r_max) {
        CHECK(lin(i, j) == 0.0);
      } else if (rho > 2 * rg->h && rho < rg->r_max - 2 * rg->h) {
        CHECK(lin(i, j) == doctest::Approx(rho).epsilon(1e-10));
      }
    }

  const Array f = (-rg->r.square() / 4.0).exp();
  const ArrayXXr emb = evolution::embed_radial(*pg, *rg, f);
  Real worst = 0;
  for (Index j = 0; j < pg->n; ++j)
    for (Index i = 0; i < pg->n; ++i) {
      const Real rho2 = pg->x[i] * pg->x[i] + pg->x[j] * pg->x[j];
      worst = std::max(worst, std::abs(emb(i, j) - std::exp(-rho2 / 4.0)));
    }
  CHECK(worst < 1e-4);
}

TEST_CASE("perturbations are sized and reproducible") {
  const auto g = PlaneGrid::make(20.0, 64);
  SpectralWorkspace ws(g);
  const ArrayXXc u = gaussian_beam(g, 1.0, 2.0);

  const ArrayXXc b = evolution::perturb_bump(*g, u, 0.01, 2.0);
  const ArrayXXc expect = sample_plane<Complex>(g, [&](Real x, Real y) {
                            return 1.0 + 0.01 * std::exp(-(x * x + y * y) / 8.0);
                          }).values;
  CHECK((b - u * expect).abs().maxCoeff() < 1e-15);

  const ArrayXXc n1 = evolution::perturb_noise(ws, u, 1e-3, 42);
  CHECK(h1_norm(ws, ArrayXXc(n1 - u)) == doctest::Approx(1e-3).epsilon(1e-10));
  const ArrayXXc n2 = evolution::perturb_noise(ws, u, 1e-3, 42);
  CHECK((n1 - n2).abs().maxCoeff() == 0.0);
  const ArrayXXc n3 = evolution::perturb_noise(ws, u, 1e-3, 43);
  CHECK((n1 - n3).abs().maxCoeff() > 0.0);

  const ArrayXXc back = evolution::rescale_charge(
      *g, n1, integrate(*g, ArrayXXr(u.abs2())));
  CHECK(integrate(*g, ArrayXXr(back.abs2())) ==
        doctest::Approx(integrate(*g, ArrayXXr(u.abs2()))).epsilon(1e-13));
}

TEST_CASE("poorly contained starts are rejected") {
  const auto g = PlaneGrid::make(20.0, 64);
  const ArrayXXc off = sample_plane<Complex>(g, [](Real x, Real y) {
                         return std::exp(-((x - 8) * (x - 8) + y * y) / 2.0);
                       }).values;
  CHECK_THROWS_AS(evolution::propagate(g, off, 0.01, energy::Params{}),
                  InvalidParameter);
}

TEST_CASE("plane polish settles an embedded profile") {
  const auto& gs = testing::small_ground_state();
  const auto g = PlaneGrid::make(40.0, 128);
  SpectralWorkspace ws(g);
  const ArrayXXr emb = evolution::embed_radial(*g, *gs.grid, gs.v);

  const auto pol = evolution::polish_plane(ws, emb, gs.params, 2000, 1e-10);
  CHECK(pol.residual < 1e-10);
  CHECK(pol.sigma == doctest::Approx(gs.sigma).epsilon(5e-3));
  const Real q0 = integrate(*g, ArrayXXr(emb.square()));
  const Real q1 = integrate(*g, ArrayXXr(pol.u.abs2()));
  CHECK(q1 == doctest::Approx(q0).epsilon(1e-10));
}

}  // TEST_SUITE
