#include "nematicon/cli.hpp"
#include "nematicon/grid.hpp"
#include "nematicon/io.hpp"
#include "nematicon/version.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

using namespace nematicon;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int rc;
  std::string out, err;
};

CliRun drive(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int rc = cli::run(args, out, err);
  return {rc, out.str(), err.str()};
}

struct TempDir {
  fs::path dir;
  explicit TempDir(const char* name) : dir(fs::temp_directory_path() / name) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string operator/(const char* name) const { return (dir / name).string(); }
};

nlohmann::json manifest(const std::string& dir) {
  return nlohmann::json::parse(io::read_file((fs::path(dir) / "run.json").string()));
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit with 2") {
  CHECK(drive({"angle", "--nope"}).rc == 2);
  CHECK(drive({"frobnicate"}).rc == 2);
  CHECK(drive({}).rc == 2);

  TempDir tmp("nematicon_cli_usage");
  CHECK(drive({"nehari", "--sigma", "1.2", "--out", tmp / "s"}).rc == 2);
  CHECK(drive({"angle", "--n", "0", "--out", tmp / "g"}).rc == 2);
  CHECK(drive({"evolve", "--out", tmp / "e"}).rc == 2);
  CHECK(drive({"evolve", "--field", "a.field", "--plane", "b.field", "--out",
               tmp / "e2"}).rc == 2);
}

TEST_CASE("help and version exit cleanly") {
  const auto help = drive({"--help"});
  CHECK(help.rc == 0);
  CHECK(help.out.find("angle") != std::string::npos);
  const auto vers = drive({"--version"});
  CHECK(vers.rc == 0);
  CHECK(vers.out.find(version) != std::string::npos);
}

TEST_CASE("config keys are checked and flags win") {
  TempDir tmp("nematicon_cli_config");
  io::atomic_write(tmp / "bogus.json", "{\"bogus\": 1}\n");
  CHECK(drive({"angle", "--config", tmp / "bogus.json", "--out", tmp / "o"}).rc ==
        2);

  io::atomic_write(tmp / "cfg.json",
                   "{\"amp\": 2.0, \"n\": 128, \"r_max\": 15.0}\n");
  const auto run = drive({"angle", "--config", tmp / "cfg.json", "--out",
                          tmp / "o", "--amp", "1.0"});
  REQUIRE(run.rc == 0);
  const auto man = manifest(tmp / "o");
  CHECK(man["status"] == "ok");
  CHECK(man["config"]["amp"] == 1.0);
  CHECK(man["config"]["n"] == 128);
  CHECK(man["config"]["r_max"] == 15.0);
}

TEST_CASE("angle run archives a loadable field with a correct inventory") {
  TempDir tmp("nematicon_cli_angle");
  const auto run = drive({"angle", "--out", tmp / "a", "--n", "128", "--r-max",
                          "15", "--amp", "1.5"});
  REQUIRE(run.rc == 0);
  CHECK(run.out.find("residual") != std::string::npos);

  const auto f = io::load_radial((fs::path(tmp / "a") / "angle_theta.field").string());
  CHECK(f.grid->n == 128);
  CHECK(f.values.maxCoeff() > 0.0);

  const auto man = manifest(tmp / "a");
  REQUIRE(man["outputs"].size() == 1);
  const auto& e = man["outputs"][0];
  CHECK(e["path"] == "angle_theta.field");
  const std::string bytes =
      io::read_file((fs::path(tmp / "a") / "angle_theta.field").string());
  CHECK(e["bytes"] == bytes.size());
  CHECK(e["checksum"] == hex64(io::fnv1a(bytes.data(), bytes.size())));

  // Same inputs, fresh directory: identical data bytes.
  const auto rerun = drive({"angle", "--out", tmp / "b", "--n", "128", "--r-max",
                            "15", "--amp", "1.5"});
  REQUIRE(rerun.rc == 0);
  CHECK(io::read_file((fs::path(tmp / "b") / "angle_theta.field").string()) ==
        bytes);
}

TEST_CASE("subcritical charge reports no ground state") {
  TempDir tmp("nematicon_cli_ground");
  const auto run = drive({"ground", "--out", tmp / "g", "--n", "128", "--r-max",
                          "15", "--a", "1.0"});
  CHECK(run.rc == 0);
  CHECK(run.out.find("no-ground-state") != std::string::npos);
  CHECK(manifest(tmp / "g")["notes"]["verdict"] == "no-ground-state");
}

TEST_CASE("decay fits a stored profile") {
  TempDir tmp("nematicon_cli_decay");
  auto g = RadialGrid::make(40.0, 512);
  RadialField f(g, Array(2.0 * (-0.5 * g->r).exp()));
  io::save_field(tmp / "v.field", f);

  const auto run =
      drive({"decay", "--field", tmp / "v.field", "--out", tmp / "d"});
  REQUIRE(run.rc == 0);
  const auto man = manifest(tmp / "d");
  CHECK(man["notes"]["valid"] == true);
  CHECK(std::abs(man["notes"]["rate"].get<double>() - 0.5) < 1e-6);
}

TEST_CASE("sweep directories collide unless forced") {
  TempDir tmp("nematicon_cli_sweep");
  const std::vector<std::string> args = {
      "sweep", "--out", tmp / "s",    "--n",      "128", "--r-max", "15",
      "--a-min", "4",   "--a-max", "5", "--points", "2",   "--jobs",  "2"};
  const auto first = drive(args);
  REQUIRE(first.rc == 0);

  // One sweep-* directory with the table inside.
  fs::path sweep_dir;
  for (const auto& e : fs::directory_iterator(tmp / "s"))
    if (e.is_directory()) sweep_dir = e.path();
  REQUIRE(!sweep_dir.empty());
  CHECK(fs::exists(sweep_dir / "sweep.csv"));
  CHECK(fs::exists(sweep_dir / "dini.csv"));

  CHECK(drive(args).rc == 2);
  auto forced = args;
  forced.push_back("--force");
  CHECK(drive(forced).rc == 0);
}

}  // TEST_SUITE
