#include "nematicon/analysis.hpp"

#include "support.hpp"

#include <cmath>
#include <filesystem>
#include <string>

#include <doctest.h>

using namespace nematicon;

TEST_SUITE("analysis") {

TEST_CASE("tail fit recovers a pure exponential") {
  const auto g = RadialGrid::make(40.0, 1024);
  const Array f = 3.0 * (-0.7 * g->r).exp();
  const auto fit = analysis::fit_decay(*g, f);
  CHECK(fit.valid);
  CHECK(fit.rate == doctest::Approx(0.7).epsilon(1e-8));
  CHECK(fit.log_amp == doctest::Approx(std::log(3.0)).epsilon(1e-6));
  CHECK(fit.r_squared > 0.999999);
  CHECK(fit.nodes >= 10);
  CHECK(fit.window_lo == doctest::Approx(20.0));
  CHECK(fit.window_hi == doctest::Approx(32.0));
}

TEST_CASE("fit window validation") {
  const auto g = RadialGrid::make(40.0, 512);
  const Array f = (-0.7 * g->r).exp();
  CHECK_THROWS_AS(analysis::fit_decay(*g, f, 0.8, 0.5), InvalidParameter);

  // Half maximum of this broad profile sits past the window start.
  const Array broad = (-(g->r / 28.0).square()).exp();
  CHECK_THROWS_AS(analysis::fit_decay(*g, broad), InvalidParameter);

  // Too steep: everything in the window is below the floor.
  const Array steep = (-5.0 * g->r).exp();
  CHECK_THROWS_AS(analysis::fit_decay(*g, steep), WindowTooSmall);
}

TEST_CASE("convexity probe holds on a computed profile") {
  const auto& gs = testing::small_ground_state();
  const auto probe = analysis::decay_probe(*gs.grid, gs.v, gs.phi, gs.sigma);
  CHECK(probe.holds);
  CHECK(probe.worst_defect <= 0.0);
  CHECK(probe.r0 > 0.0);
  CHECK(probe.i0 > 0);
  CHECK(probe.w.size() == gs.grid->n);
}

TEST_CASE("radial bound accepts decreasing moduli and rejects growth") {
  const auto g = RadialGrid::make(20.0, 256);
  const Array f = (-g->r.square() / 2.0).exp();
  const Real bound = analysis::radial_bound(*g, f);
  CHECK(std::isfinite(bound));
  CHECK(bound > 0.0);
  CHECK_THROWS_AS(analysis::radial_bound(*g, g->r.square()), NotDecreasing);
}

TEST_CASE("csv emit, parse, emit is byte-identical") {
  analysis::Table t;
  t.columns = {"a", "sigma", "J"};
  t.rows = {{0.1, 1.0 / 3.0, 1e-300},
            {-2.5e17, 0.0, 6.02214076e23},
            {1.0, -0.0, 3.5}};
  const std::string text = analysis::to_csv(t);
  const auto back = analysis::parse_csv(text);
  REQUIRE(back.columns == t.columns);
  REQUIRE(back.rows.size() == t.rows.size());
  for (size_t i = 0; i < t.rows.size(); ++i)
    for (size_t j = 0; j < t.rows[i].size(); ++j)
      CHECK(back.rows[i][j] == t.rows[i][j]);
  CHECK(analysis::to_csv(back) == text);
  CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("csv rejects malformed input") {
  CHECK_THROWS_AS(analysis::parse_csv("a,b\n1.0\n"), CorruptFile);
  CHECK_THROWS_AS(analysis::parse_csv("a,b\n1.0,xyz\n"), CorruptFile);
  CHECK_THROWS_AS(analysis::parse_csv("a,b\r\n1,2\r\n"), CorruptFile);
  CHECK_THROWS_AS(analysis::parse_csv(""), CorruptFile);
}

TEST_CASE("csv file round trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "nematicon_analysis_test";
  fs::create_directories(dir);
  const std::string path = (dir / "table.csv").string();

  analysis::Table t;
  t.columns = {"x", "y"};
  t.rows = {{1.5, 2.25}, {-0.75, 1e-9}};
  analysis::write_csv(path, t);
  const auto back = analysis::read_csv(path);
  CHECK(analysis::to_csv(back) == analysis::to_csv(t));
  fs::remove_all(dir);
}

}  // TEST_SUITE
