#include "nematicon/cli.hpp"

#include "nematicon/analysis.hpp"
#include "nematicon/angle.hpp"
#include "nematicon/config.hpp"
#include "nematicon/energy.hpp"
#include "nematicon/evolution.hpp"
#include "nematicon/grid.hpp"
#include "nematicon/groundstate.hpp"
#include "nematicon/io.hpp"
#include "nematicon/nehari.hpp"
#include "nematicon/spectrum.hpp"
#include "nematicon/verify.hpp"
#include "nematicon/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

namespace nematicon::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

template <typename... A>
std::string str(const char* fmt, A... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

std::string hex64(uint64_t h) {
  return str("%016llx", static_cast<unsigned long long>(h));
}

std::string timestamp() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string default_out() {
  const char* env = std::getenv("NEMATICON_OUT");
  return env && *env ? env : ".";
}

// Run record written next to the outputs: merged configuration, status, and
// a checksum inventory. Contains timestamps, so determinism comparisons go
// through the listed data files, not through run.json itself.
class Manifest {
 public:
  Manifest(std::string command, std::string dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
    doc_["command"] = std::move(command);
    doc_["version"] = version;
    doc_["started"] = timestamp();
    doc_["outputs"] = json::array();
    t0_ = std::chrono::steady_clock::now();
  }

  const std::string& dir() const { return dir_; }
  std::string path(const std::string& name) const {
    return (fs::path(dir_) / name).string();
  }

  void config(const json& merged) { doc_["config"] = merged; }
  void note(const std::string& key, const json& v) { doc_["notes"][key] = v; }

  void record(const std::string& p) {
    const std::string bytes = io::read_file(p);
    json e;
    e["path"] = fs::path(p).filename().string();
    e["bytes"] = bytes.size();
    e["checksum"] = hex64(io::fnv1a(bytes.data(), bytes.size()));
    doc_["outputs"].push_back(e);
  }

  void finish(const std::string& status) {
    doc_["status"] = status;
    doc_["finished"] = timestamp();
    doc_["elapsed_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_)
            .count();
    io::atomic_write(path("run.json"), doc_.dump(2) + "\n");
  }

 private:
  std::string dir_;
  json doc_;
  std::chrono::steady_clock::time_point t0_;
};

template <typename F>
int guarded(Manifest& man, F&& body) {
  try {
    const int rc = body();
    man.finish(rc == 0 ? "ok" : "failed");
    return rc;
  } catch (const std::exception& e) {
    man.finish(std::string("error: ") + e.what());
    throw;
  }
}

// Flags override config-file keys; keys a command never asked for are
// rejected. Flag names map to keys by '-' -> '_' ("--a-min" is "a_min").
class Merged {
 public:
  Merged(const CLI::App& cmd, const std::string& config_path) : cmd_(cmd) {
    cfg_ = config_path.empty() ? json::object() : config::load(config_path);
  }

  Real real(const std::string& key, Real v) {
    const Real out = given(key) ? v : config::get_real(cfg_, key, v);
    echo_[key] = out;
    return out;
  }
  Index index(const std::string& key, Index v) {
    const Index out = given(key) ? v : config::get_index(cfg_, key, v);
    echo_[key] = static_cast<int64_t>(out);
    return out;
  }
  bool flag(const std::string& key, bool v) {
    const bool out = given(key) ? v : config::get_bool(cfg_, key, v);
    echo_[key] = out;
    return out;
  }
  std::string text(const std::string& key, const std::string& v) {
    const std::string out = given(key) ? v : config::get_string(cfg_, key, v);
    echo_[key] = out;
    return out;
  }

  void finish() const { config::restrict_keys(cfg_, allowed_); }
  const json& echo() const { return echo_; }

 private:
  bool given(const std::string& key) {
    allowed_.push_back(key);
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    return cmd_.count(flag) > 0;
  }

  const CLI::App& cmd_;
  config::Json cfg_;
  mutable std::vector<std::string> allowed_;
  json echo_ = json::object();
};

struct Common {
  std::string config_path;
  std::string out = default_out();
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path,
                  "flat JSON config file; explicit flags win over its keys");
  sub->add_option("--out", c.out,
                  "output directory (default $NEMATICON_OUT, else .)");
}

// ---------------------------------------------------------------- angle --

struct AngleArgs {
  Common c;
  std::string field;
  Real amp = 1.5, width = 3.0, r_max = 40.0;
  Index n = 2048;
  Real lambda = 1.0, q = 1.0, tol = 0.0;
  Index max_iter = 200;
};

int cmd_angle(AngleArgs& a, const CLI::App& sub, std::ostream& out) {
  Merged m(sub, a.c.config_path);
  const std::string field = m.text("field", a.field);
  const Real amp = m.real("amp", a.amp);
  const Real width = m.real("width", a.width);
  const Real r_max = m.real("r_max", a.r_max);
  const Index n = m.index("n", a.n);
  const energy::Params p{m.real("lambda", a.lambda), m.real("q", a.q)};
  angle::Options aopts;
  aopts.tol = m.real("tol", a.tol);
  aopts.max_iter = static_cast<int>(m.index("max_iter", a.max_iter));
  const std::string dir = m.text("out", a.c.out);
  m.finish();
  p.validate();

  Manifest man("angle", dir);
  man.config(m.echo());
  return guarded(man, [&] {
    const RadialField u =
        field.empty()
            ? sample(RadialGrid::make(r_max, n),
                     [&](Real r) {
                       return amp * std::exp(-r * r / (2.0 * width * width));
                     })
            : io::load_radial(field);
    const auto sol = angle::solve(u, p, aopts);
    out << str("residual   = %.3e\n", sol.residual)
        << str("iterations = %d\n", sol.iterations)
        << str("max tilt   = %.6f\n", sol.theta.values.maxCoeff());
    io::save_field(man.path("angle_theta.field"), sol.theta);
    man.record(man.path("angle_theta.field"));
    return sol.converged ? 0 : 1;
  });
}

// --------------------------------------------------------------- ground --

struct GroundArgs {
  Common c;
  Real a = 6.0, r_max = 40.0, lambda = 1.0, q = 1.0;
  Real tol = 1e-10, flow_tol = 2e-5, width = 3.0;
  Index n = 2048;
};

int cmd_ground(GroundArgs& g, const CLI::App& sub, std::ostream& out) {
  Merged m(sub, g.c.config_path);
  const Real a = m.real("a", g.a);
  const Real r_max = m.real("r_max", g.r_max);
  const Index n = m.index("n", g.n);
  const energy::Params p{m.real("lambda", g.lambda), m.real("q", g.q)};
  groundstate::FlowOptions fo;
  fo.tol = m.real("tol", g.tol);
  fo.flow_tol = m.real("flow_tol", g.flow_tol);
  fo.width = m.real("width", g.width);
  const std::string dir = m.text("out", g.c.out);
  m.finish();
  p.validate();

  Manifest man("ground", dir);
  man.config(m.echo());
  return guarded(man, [&] {
    const auto res = groundstate::minimize_charge(RadialGrid::make(r_max, n),
                                                  a, p, fo);
    const auto& d = res.diag;
    out << "verdict    = " << d.verdict << "\n"
        << str("sigma      = %.12g\n", d.sigma)
        << str("J          = %.12g\n", d.J)
        << str("residual   = %.3e\n", d.residual)
        << str("iterations = %d flow + %d polish\n", d.flow_iterations,
               d.polish_iterations);
    man.note("verdict", d.verdict);
    if (res.state) {
      io::save_field(man.path("ground_v.field"),
                     RadialField(res.state->grid, res.state->v));
      io::save_field(man.path("ground_phi.field"),
                     RadialField(res.state->grid, res.state->phi));
      man.record(man.path("ground_v.field"));
      man.record(man.path("ground_phi.field"));
    }
    return d.verdict == "no-convergence" ? 1 : 0;
  });
}

// --------------------------------------------------------------- nehari --

struct NehariArgs {
  Common c;
  Real sigma = 0.25, r_max = 40.0, lambda = 1.0, q = 1.0, tol = 1e-8;
  Index n = 2048;
};

int cmd_nehari(NehariArgs& h, const CLI::App& sub, std::ostream& out) {
  Merged m(sub, h.c.config_path);
  const Real sigma = m.real("sigma", h.sigma);
  const Real r_max = m.real("r_max", h.r_max);
  const Index n = m.index("n", h.n);
  const energy::Params p{m.real("lambda", h.lambda), m.real("q", h.q)};
  nehari::Options no;
  no.tol = m.real("tol", h.tol);
  const std::string dir = m.text("out", h.c.out);
  m.finish();
  p.validate();

  Manifest man("nehari", dir);
  man.config(m.echo());
  return guarded(man, [&] {
    const auto gs = nehari::minimize_action(RadialGrid::make(r_max, n), sigma,
                                            p, no);
    out << str("sigma      = %.12g\n", gs.sigma)
        << str("charge     = %.12g\n", gs.a)
        << str("energy     = %.12g\n", gs.report.E)
        << str("level      = %.12g\n", gs.report.S(gs.sigma))
        << str("residual   = %.3e\n", gs.residual);
    io::save_field(man.path("nehari_v.field"), RadialField(gs.grid, gs.v));
    io::save_field(man.path("nehari_phi.field"), RadialField(gs.grid, gs.phi));
    man.record(man.path("nehari_v.field"));
    man.record(man.path("nehari_phi.field"));
    return 0;
  });
}

// ------------------------------------------------------------- spectrum --

struct SpectrumArgs {
  Common c;
  std::string v_path, phi_path;
  Real lambda = 1.0, q = 1.0;
  Index harmonics = 4, per_sector = 2;
};

int cmd_spectrum(SpectrumArgs& s, const CLI::App& sub, std::ostream& out) {
  Merged m(sub, s.c.config_path);
  const std::string v_path = m.text("v", s.v_path);
  const std::string phi_path = m.text("phi", s.phi_path);
  const energy::Params p{m.real("lambda", s.lambda), m.real("q", s.q)};
  spectrum::Options so;
  so.harmonics = static_cast<int>(m.index("harmonics", s.harmonics));
  so.per_sector = static_cast<int>(m.index("per_sector", s.per_sector));
  const std::string dir = m.text("out", s.c.out);
  m.finish();
  p.validate();
  if (v_path.empty() || phi_path.empty())
    throw InvalidParameter("spectrum needs --v and --phi field files");

  Manifest man("spectrum", dir);
  man.config(m.echo());
  return guarded(man, [&] {
    const RadialField vf = io::load_radial(v_path);
    const RadialField pf = io::load_radial(phi_path, vf.grid);

    // Rebuild the stationary pair from disk; the angle is re-solved (warm
    // from the stored one) so the reported residual is honest.
    groundstate::GroundState gs;
    gs.grid = vf.grid;
    gs.v = vf.values;
    const auto sol = angle::solve_intensity(gs.grid, gs.v.square(), p, {},
                                            &pf.values);
    gs.phi = sol.theta.values;
    gs.sigma = groundstate::extract_sigma(*gs.grid, gs.v, gs.phi);
    gs.a = l2_inner(*gs.grid, gs.v, gs.v);
    gs.residual = std::max(
        groundstate::beam_residual(*gs.grid, gs.v, gs.phi, gs.sigma)
            .abs()
            .maxCoeff(),
        sol.residual);
    gs.report = energy::evaluate(RadialField(gs.grid, gs.v),
                                 RadialField(gs.grid, gs.phi), p);
    gs.params = p;
    gs.solver = "loaded";

    out << str("sigma = %.12g, residual = %.3e\n", gs.sigma, gs.residual);
    for (const auto which : {spectrum::Which::coupled, spectrum::Which::phase}) {
      const bool coupled = which == spectrum::Which::coupled;
      const auto rep = spectrum::analyze(gs, which, so);
      out << (coupled ? "coupled blocks:\n" : "phase direction:\n");
      analysis::Table t;
      t.columns = {"k", "lowest", "deflated", "residual"};
      for (const auto& sec : rep.sectors) {
        out << str("  k=%d  lowest %12.6g  deflated %12.6g\n", sec.k,
                   sec.values[0], sec.deflated_lowest);
        t.rows.push_back({Real(sec.k), sec.values[0], sec.deflated_lowest,
                          sec.residuals[0]});
      }
      out << str("  tau = %.6g, %s\n", rep.tau,
                 rep.coercive ? "coercive" : "not coercive");
      const std::string name =
          coupled ? "spectrum_coupled.csv" : "spectrum_phase.csv";
      analysis::write_csv(man.path(name), t);
      man.record(man.path(name));
      man.note(coupled ? "tau_coupled" : "tau_phase", rep.tau);
    }
    return 0;
  });
}

// --------------------------------------------------------------- evolve --

struct EvolveArgs {
  Common c;
  std::string field, plane;
  Real length = 40.0, z = 20.0, dz = 2e-3, lambda = 1.0, q = 1.0;
  Index plane_n = 256, record_every = 100;
  bool free_run = false;
};

int cmd_evolve(EvolveArgs& e, const CLI::App& sub, std::ostream& out) {
  Merged m(sub, e.c.config_path);
  const std::string field = m.text("field", e.field);
  const std::string plane = m.text("plane", e.plane);
  const Real length = m.real("length", e.length);
  const Index plane_n = m.index("plane_n", e.plane_n);
  const Real z_end = m.real("z", e.z);
  const energy::Params p{m.real("lambda", e.lambda), m.real("q", e.q)};
  evolution::Options eo;
  eo.dz = m.real("dz", e.dz);
  eo.couple = !m.flag("free", e.free_run);
  eo.record_every = static_cast<int>(m.index("record_every", e.record_every));
  const std::string dir = m.text("out", e.c.out);
  m.finish();
  p.validate();
  if (field.empty() == plane.empty())
    throw InvalidParameter(
        "evolve needs exactly one input: --field (radial) or --plane");

  Manifest man("evolve", dir);
  man.config(m.echo());
  return guarded(man, [&] {
    PlaneGridPtr pg;
    ArrayXXc u0;
    if (!field.empty()) {
      const RadialField f = io::load_radial(field);
      pg = PlaneGrid::make(length, plane_n);
      u0 = evolution::embed_radial(*pg, *f.grid, f.values).cast<Complex>();
    } else {
      ComplexPlaneField f = io::load_plane(plane);
      pg = f.grid;
      u0 = std::move(f.values);
    }

    const auto res = evolution::propagate(pg, u0, z_end, p, eo);
    const auto& first = res.trace.front();
    const auto& last = res.trace.back();
    out << str("steps      = %d (z = %.6g)\n", res.steps, res.z)
        << str("Q drift    = %.3e\n",
               std::abs(last.Q - first.Q) / first.Q)
        << str("E drift    = %.3e\n",
               std::abs(last.E - first.E) / std::max(std::abs(first.E), 1e-300));
    if (res.box_warning)
      out << "warning: beam mass reached the outer edge of the box\n";

    analysis::Table t;
    t.columns = {"z", "Q", "E", "edge_fraction"};
    for (const auto& row : res.trace)
      t.rows.push_back({row.z, row.Q, row.E, row.edge_fraction});
    analysis::write_csv(man.path("trace.csv"), t);
    man.record(man.path("trace.csv"));
    io::save_field(man.path("evolve_u.field"), ComplexPlaneField(pg, res.u));
    man.record(man.path("evolve_u.field"));
    if (eo.couple) {
      io::save_field(man.path("evolve_theta.field"),
                     RealPlaneField(pg, res.theta));
      man.record(man.path("evolve_theta.field"));
    }
    man.note("box_warning", res.box_warning);
    return 0;
  });
}

// ---------------------------------------------------------------- sweep --

struct SweepArgs {
  Common c;
  Real a_min = 3.5, a_max = 9.0, r_max = 40.0, lambda = 1.0, q = 1.0;
  Index n = 2048, points = 8, jobs = 1;
  bool force = false, keep_going = false;
};

int cmd_sweep(SweepArgs& s, const CLI::App& sub, std::ostream& out) {
  Merged m(sub, s.c.config_path);
  const Real a_min = m.real("a_min", s.a_min);
  const Real a_max = m.real("a_max", s.a_max);
  const Index points = m.index("points", s.points);
  const Real r_max = m.real("r_max", s.r_max);
  const Index n = m.index("n", s.n);
  const energy::Params p{m.real("lambda", s.lambda), m.real("q", s.q)};
  const Index jobs = m.index("jobs", s.jobs);
  const bool force = m.flag("force", s.force);
  const bool keep_going = m.flag("keep_going", s.keep_going);
  const std::string root = m.text("out", s.c.out);
  m.finish();
  p.validate();
  if (points < 2) throw InvalidParameter("sweep needs at least two points");
  if (!(a_min > 0) || !(a_max > a_min))
    throw InvalidParameter("sweep needs 0 < a_min < a_max");
  if (jobs < 1) throw InvalidParameter("jobs must be positive");

  std::vector<Real> charges(points);
  for (Index i = 0; i < points; ++i)
    charges[i] = a_min + (a_max - a_min) * Real(i) / Real(points - 1);

  // Deterministic directory per parameter set, so reruns are comparable and
  // accidental mixing of different sweeps is refused.
  const std::string id =
      str("a=%.17g..%.17g;points=%lld;r_max=%.17g;n=%lld;lambda=%.17g;q=%.17g",
          a_min, a_max, static_cast<long long>(points), r_max,
          static_cast<long long>(n), p.lambda, p.q);
  const std::string dir =
      (fs::path(root) /
       ("sweep-" + hex64(io::fnv1a(id.data(), id.size())).substr(8)))
          .string();
  if (fs::exists(dir) && !force)
    throw InvalidParameter("sweep directory " + dir +
                           " already exists; pass --force to overwrite");

  Manifest man("sweep", dir);
  man.config(m.echo());
  return guarded(man, [&] {
    const auto grid = RadialGrid::make(r_max, n);
    groundstate::ChargeSweep sw;
    if (jobs == 1) {
      // Serial: warm-chained inside sweep_charge.
      sw = groundstate::sweep_charge(grid, p, charges);
    } else {
      sw.points.resize(charges.size());
      std::atomic<size_t> next{0};
      auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < charges.size();) {
          auto& pt = sw.points[i];
          pt.a = charges[i];
          try {
            const auto res = groundstate::minimize_charge(grid, charges[i], p);
            pt.sigma = res.diag.sigma;
            pt.J = res.diag.J;
            pt.residual = res.diag.residual;
            pt.verdict = res.diag.verdict;
            pt.ok = res.state.has_value();
          } catch (const std::exception& ex) {
            pt.verdict = std::string("error: ") + ex.what();
          }
        }
      };
      std::vector<std::thread> pool;
      const size_t count =
          std::min<size_t>(static_cast<size_t>(jobs), charges.size());
      for (size_t t = 0; t < count; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
      for (size_t i = 0; i + 1 < sw.points.size(); ++i)
        if (sw.points[i].ok && sw.points[i + 1].ok)
          sw.dini_quotients.push_back(
              (sw.points[i + 1].sigma - sw.points[i].sigma) /
              (sw.points[i + 1].a - sw.points[i].a));
    }

    analysis::Table t;
    t.columns = {"a", "sigma", "J", "residual", "ok"};
    bool failed = false;
    for (const auto& pt : sw.points) {
      out << str("a=%9.5f  sigma=%10.6f  J=%12.6f  res=%9.2e  %s\n", pt.a,
                 pt.sigma, pt.J, pt.residual, pt.verdict.c_str());
      t.rows.push_back({pt.a, pt.sigma, pt.J, pt.residual, pt.ok ? 1.0 : 0.0});
      failed = failed || (!pt.ok && pt.verdict != "no-ground-state");
    }
    analysis::write_csv(man.path("sweep.csv"), t);
    man.record(man.path("sweep.csv"));
    if (!sw.dini_quotients.empty()) {
      analysis::Table dq;
      dq.columns = {"a_lo", "a_hi", "quotient"};
      size_t k = 0;
      for (size_t i = 0; i + 1 < sw.points.size(); ++i)
        if (sw.points[i].ok && sw.points[i + 1].ok)
          dq.rows.push_back(
              {sw.points[i].a, sw.points[i + 1].a, sw.dini_quotients[k++]});
      analysis::write_csv(man.path("dini.csv"), dq);
      man.record(man.path("dini.csv"));
    }
    return failed && !keep_going ? 1 : 0;
  });
}

// ---------------------------------------------------------------- decay --

struct DecayArgs {
  Common c;
  std::string field, phi;
  Real lo = 0.5, hi = 0.8, sigma = 0.0;
};

int cmd_decay(DecayArgs& d, const CLI::App& sub, std::ostream& out) {
  Merged m(sub, d.c.config_path);
  const std::string field = m.text("field", d.field);
  const std::string phi = m.text("phi", d.phi);
  const Real lo = m.real("lo", d.lo);
  const Real hi = m.real("hi", d.hi);
  const Real sigma_in = m.real("sigma", d.sigma);
  const std::string dir = m.text("out", d.c.out);
  m.finish();
  if (field.empty()) throw InvalidParameter("decay needs a --field file");

  Manifest man("decay", dir);
  man.config(m.echo());
  return guarded(man, [&] {
    const RadialField f = io::load_radial(field);
    const auto fit = analysis::fit_decay(*f.grid, f.values, lo, hi);
    out << str("rate     = %.6f\n", fit.rate)
        << str("r2       = %.8f (%s)\n", fit.r_squared,
               fit.valid ? "valid" : "poor fit")
        << str("window   = [%.3g, %.3g], %lld nodes\n", fit.window_lo,
               fit.window_hi, static_cast<long long>(fit.nodes));
    man.note("rate", fit.rate);
    man.note("valid", fit.valid);
    if (!phi.empty()) {
      const RadialField ph = io::load_radial(phi, f.grid);
      const Real sigma =
          sigma_in > 0
              ? sigma_in
              : groundstate::extract_sigma(*f.grid, f.values, ph.values);
      const auto probe =
          analysis::decay_probe(*f.grid, f.values, ph.values, sigma);
      out << str("convexity beyond r=%.3g: %s (worst defect %.2e)\n", probe.r0,
                 probe.holds ? "holds" : "violated", probe.worst_defect);
      man.note("probe_holds", probe.holds);
    }
    return 0;
  });
}

// --------------------------------------------------------------- verify --

struct VerifyArgs {
  Common c;
  bool quick = false;
};

int cmd_verify(VerifyArgs& v, const CLI::App& sub, std::ostream& out) {
  Merged m(sub, v.c.config_path);
  const bool quick = m.flag("quick", v.quick);
  const std::string root = m.text("out", v.c.out);
  m.finish();

  const verify::Scale scale = quick ? verify::quick() : verify::desk();
  const std::string dir =
      (fs::path(root) / ("verify-" + scale.name)).string();
  Manifest man("verify", dir);
  man.config(m.echo());
  return guarded(man, [&] {
    const auto suite = verify::run(scale, dir, out);
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_regular_file() && e.path().filename() != "run.json")
        files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) man.record(f);
    man.note("all_pass", suite.all_pass);
    out << (suite.all_pass ? "all checks passed\n" : "some checks FAILED\n");
    return suite.all_pass ? 0 : 1;
  });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "ground states, stability, and propagation of nematicon beams"};
  app.set_version_flag("--version", version);
  app.require_subcommand(1);
  int rc = 0;

  AngleArgs angle_args;
  auto* s_angle = app.add_subcommand(
      "angle", "solve the medium tilt for a beam profile");
  add_common(s_angle, angle_args.c);
  s_angle->add_option("--field", angle_args.field,
                      "radial beam profile file (else a Gaussian is built)");
  s_angle->add_option("--amp", angle_args.amp, "Gaussian amplitude");
  s_angle->add_option("--width", angle_args.width, "Gaussian width");
  s_angle->add_option("--r-max", angle_args.r_max, "domain radius");
  s_angle->add_option("--n", angle_args.n, "radial nodes");
  s_angle->add_option("--lambda", angle_args.lambda, "elastic constant");
  s_angle->add_option("--q", angle_args.q, "pre-tilt constant");
  s_angle->add_option("--tol", angle_args.tol, "residual target (0 = default)");
  s_angle->add_option("--max-iter", angle_args.max_iter, "Newton iteration cap");
  s_angle->callback([&] { rc = cmd_angle(angle_args, *s_angle, out); });

  GroundArgs ground_args;
  auto* s_ground = app.add_subcommand(
      "ground", "fixed-charge ground state of the coupled system");
  add_common(s_ground, ground_args.c);
  s_ground->add_option("--a", ground_args.a, "beam charge ||u||^2");
  s_ground->add_option("--r-max", ground_args.r_max, "domain radius");
  s_ground->add_option("--n", ground_args.n, "radial nodes");
  s_ground->add_option("--lambda", ground_args.lambda, "elastic constant");
  s_ground->add_option("--q", ground_args.q, "pre-tilt constant");
  s_ground->add_option("--tol", ground_args.tol, "final residual target");
  s_ground->add_option("--flow-tol", ground_args.flow_tol,
                       "flow residual before the Newton polish");
  s_ground->add_option("--width", ground_args.width, "starting Gaussian width");
  s_ground->callback([&] { rc = cmd_ground(ground_args, *s_ground, out); });

  NehariArgs nehari_args;
  auto* s_nehari = app.add_subcommand(
      "nehari", "fixed-frequency stationary state via the constrained sphere");
  add_common(s_nehari, nehari_args.c);
  s_nehari->add_option("--sigma", nehari_args.sigma, "frequency in (0, 1)");
  s_nehari->add_option("--r-max", nehari_args.r_max, "domain radius");
  s_nehari->add_option("--n", nehari_args.n, "radial nodes");
  s_nehari->add_option("--lambda", nehari_args.lambda, "elastic constant");
  s_nehari->add_option("--q", nehari_args.q, "pre-tilt constant");
  s_nehari->add_option("--tol", nehari_args.tol, "residual target");
  s_nehari->callback([&] { rc = cmd_nehari(nehari_args, *s_nehari, out); });

  SpectrumArgs spectrum_args;
  auto* s_spectrum = app.add_subcommand(
      "spectrum", "second variation around a stored stationary pair");
  add_common(s_spectrum, spectrum_args.c);
  s_spectrum->add_option("--v", spectrum_args.v_path, "beam profile file");
  s_spectrum->add_option("--phi", spectrum_args.phi_path, "angle profile file");
  s_spectrum->add_option("--lambda", spectrum_args.lambda, "elastic constant");
  s_spectrum->add_option("--q", spectrum_args.q, "pre-tilt constant");
  s_spectrum->add_option("--harmonics", spectrum_args.harmonics,
                         "angular sectors k = 0..h-1");
  s_spectrum->add_option("--per-sector", spectrum_args.per_sector,
                         "eigenpairs per sector");
  s_spectrum->callback(
      [&] { rc = cmd_spectrum(spectrum_args, *s_spectrum, out); });

  EvolveArgs evolve_args;
  auto* s_evolve = app.add_subcommand(
      "evolve", "propagate a beam along z by Strang splitting");
  add_common(s_evolve, evolve_args.c);
  s_evolve->add_option("--field", evolve_args.field,
                       "radial profile to embed on the plane");
  s_evolve->add_option("--plane", evolve_args.plane,
                       "complex plane field to continue from");
  s_evolve->add_option("--length", evolve_args.length, "box side");
  s_evolve->add_option("--plane-n", evolve_args.plane_n,
                       "lattice size (power of two)");
  s_evolve->add_option("--z", evolve_args.z, "propagation distance");
  s_evolve->add_option("--dz", evolve_args.dz, "step size");
  s_evolve->add_option("--lambda", evolve_args.lambda, "elastic constant");
  s_evolve->add_option("--q", evolve_args.q, "pre-tilt constant");
  s_evolve->add_option("--record-every", evolve_args.record_every,
                       "steps between trace rows");
  s_evolve->add_flag("--free", evolve_args.free_run,
                     "drop the medium coupling (pure dispersion)");
  s_evolve->callback([&] { rc = cmd_evolve(evolve_args, *s_evolve, out); });

  SweepArgs sweep_args;
  auto* s_sweep = app.add_subcommand(
      "sweep", "ground states over a range of charges");
  add_common(s_sweep, sweep_args.c);
  s_sweep->add_option("--a-min", sweep_args.a_min, "lowest charge");
  s_sweep->add_option("--a-max", sweep_args.a_max, "highest charge");
  s_sweep->add_option("--points", sweep_args.points, "number of charges");
  s_sweep->add_option("--r-max", sweep_args.r_max, "domain radius");
  s_sweep->add_option("--n", sweep_args.n, "radial nodes");
  s_sweep->add_option("--lambda", sweep_args.lambda, "elastic constant");
  s_sweep->add_option("--q", sweep_args.q, "pre-tilt constant");
  s_sweep->add_option("--jobs", sweep_args.jobs,
                      "parallel workers (1 = serial with warm starts)");
  s_sweep->add_flag("--force", sweep_args.force,
                    "reuse an existing sweep directory");
  s_sweep->add_flag("--keep-going", sweep_args.keep_going,
                    "exit 0 even when points fail");
  s_sweep->callback([&] { rc = cmd_sweep(sweep_args, *s_sweep, out); });

  DecayArgs decay_args;
  auto* s_decay = app.add_subcommand(
      "decay", "exponential tail fit of a stored radial profile");
  add_common(s_decay, decay_args.c);
  s_decay->add_option("--field", decay_args.field, "radial profile file");
  s_decay->add_option("--phi", decay_args.phi,
                      "angle profile for the convexity probe");
  s_decay->add_option("--lo", decay_args.lo, "window start as r_max fraction");
  s_decay->add_option("--hi", decay_args.hi, "window end as r_max fraction");
  s_decay->add_option("--sigma", decay_args.sigma,
                      "frequency for the probe (0 = extract from the pair)");
  s_decay->callback([&] { rc = cmd_decay(decay_args, *s_decay, out); });

  VerifyArgs verify_args;
  auto* s_verify = app.add_subcommand(
      "verify", "run the acceptance checks");
  add_common(s_verify, verify_args.c);
  s_verify->add_flag("--quick", verify_args.quick,
                     "reduced scale, a few minutes instead of the full run");
  s_verify->callback([&] { rc = cmd_verify(verify_args, *s_verify, out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SigmaOutOfRange& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidGrid& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("nematicon");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace nematicon::cli
