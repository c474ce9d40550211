#include "nematicon/io.hpp"
#include "nematicon/rng.hpp"

#include <filesystem>
#include <string>

#include <doctest.h>

using namespace nematicon;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path dir;
  TempDir() : dir(fs::temp_directory_path() / "nematicon_io_test") {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string operator/(const char* name) const { return (dir / name).string(); }
};

RadialField noisy_radial(Real r_max, Index n, uint64_t seed) {
  auto g = RadialGrid::make(r_max, n);
  RadialField f(g);
  for (Index i = 0; i < n; ++i) f.values[i] = rng::uniform(seed, -1.0, 1.0);
  return f;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("radial fields round trip bitwise") {
  TempDir tmp;
  const auto f = noisy_radial(17.5, 384, 7);
  const std::string path = tmp / "r.field";
  io::save_field(path, f);
  const auto back = io::load_radial(path);
  CHECK(back.grid->n == f.grid->n);
  CHECK(back.grid->r_max == f.grid->r_max);
  CHECK((back.values == f.values).all());

  const auto checked = io::load_radial(path, f.grid);
  CHECK(checked.grid == f.grid);
  CHECK((checked.values == f.values).all());
}

TEST_CASE("plane fields round trip bitwise") {
  TempDir tmp;
  auto g = PlaneGrid::make(12.0, 32);
  ComplexPlaneField f(g);
  uint64_t seed = 99;
  for (Index j = 0; j < g->n; ++j)
    for (Index i = 0; i < g->n; ++i)
      f.values(i, j) = Complex(rng::uniform(seed, -1, 1), rng::uniform(seed, -1, 1));

  const std::string path = tmp / "p.field";
  io::save_field(path, f);
  const auto back = io::load_plane(path, g);
  CHECK((back.values == f.values).all());
}

TEST_CASE("corruption is detected") {
  TempDir tmp;
  const auto f = noisy_radial(10.0, 64, 3);
  const std::string path = tmp / "c.field";
  io::save_field(path, f);
  const std::string blob = io::read_file(path);

  // Flip one payload byte: checksum mismatch.
  std::string flipped = blob;
  flipped[flipped.size() - 5] ^= 0x40;
  io::atomic_write(tmp / "flip.field", flipped);
  CHECK_THROWS_AS(io::load_radial(tmp / "flip.field"), CorruptFile);

  // Drop the tail: payload size mismatch.
  io::atomic_write(tmp / "cut.field", blob.substr(0, blob.size() - 8));
  CHECK_THROWS_AS(io::load_radial(tmp / "cut.field"), CorruptFile);

  // Future schema version is refused before any payload check.
  std::string vers = blob;
  const auto at = vers.find("\"schema_version\":1");
  REQUIRE(at != std::string::npos);
  vers.replace(at, 18, "\"schema_version\":99");
  io::atomic_write(tmp / "vers.field", vers);
  CHECK_THROWS_AS(io::load_radial(tmp / "vers.field"), VersionError);
}

TEST_CASE("grid expectations are enforced") {
  TempDir tmp;
  const auto f = noisy_radial(10.0, 64, 11);
  const std::string path = tmp / "g.field";
  io::save_field(path, f);

  CHECK_THROWS_AS(io::load_radial(path, RadialGrid::make(10.0, 128)),
                  GridMismatch);
  CHECK_THROWS_AS(io::load_radial(path, RadialGrid::make(12.0, 64)),
                  GridMismatch);
  CHECK_THROWS_AS(io::load_plane(path), GridMismatch);

  ComplexPlaneField pf(PlaneGrid::make(12.0, 16));
  pf.values.setZero();
  io::save_field(tmp / "pl.field", pf);
  CHECK_THROWS_AS(io::load_radial(tmp / "pl.field"), GridMismatch);
  CHECK_THROWS_AS(io::load_plane(tmp / "pl.field", PlaneGrid::make(12.0, 32)),
                  GridMismatch);
}

TEST_CASE("atomic writes leave no droppings") {
  TempDir tmp;
  io::atomic_write(tmp / "a.txt", "hello");
  CHECK(io::read_file(tmp / "a.txt") == "hello");
  io::atomic_write(tmp / "a.txt", "world");
  CHECK(io::read_file(tmp / "a.txt") == "world");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(tmp.dir)) ++entries;
  CHECK(entries == 1);
}

TEST_CASE("fnv1a matches the published test vectors") {
  CHECK(io::fnv1a("", 0) == 0xcbf29ce484222325ull);
  CHECK(io::fnv1a("a", 1) == 0xaf63dc4c8601ec8cull);
  CHECK(io::fnv1a("foobar", 6) == 0x85944171f73967e8ull);
}

}  // TEST_SUITE
