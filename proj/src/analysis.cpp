#include "nematicon/analysis.hpp"

#include "nematicon/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace nematicon::analysis {

DecayFit fit_decay(const RadialGrid& g, const Array& f, Real lo_frac,
                   Real hi_frac) {
  require_same_grid(g, f);
  if (!(lo_frac > 0) || !(hi_frac > lo_frac) || !(hi_frac <= 1.0))
    throw InvalidParameter("fit window fractions must satisfy 0 < lo < hi <= 1");

  const Array mag = f.abs();
  const Real peak = mag.maxCoeff();
  if (!(peak > 0)) throw WindowTooSmall("profile is identically zero");
  Real r_half = 0;
  for (Index i = 0; i < g.n; ++i)
    if (mag[i] >= 0.5 * peak) r_half = g.r[i];
  const Real lo = lo_frac * g.r_max, hi = hi_frac * g.r_max;
  if (lo <= r_half)
    throw InvalidParameter("fit window must start beyond the half-maximum radius");

  // Accumulate the least-squares line through (r, log|f|).
  Real sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<Real> xs, ys;
  for (Index i = 0; i < g.n; ++i) {
    if (g.r[i] < lo || g.r[i] > hi || mag[i] <= 1e-14) continue;
    const Real x = g.r[i], y = std::log(mag[i]);
    xs.push_back(x);
    ys.push_back(y);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const Real m = static_cast<Real>(xs.size());
  if (xs.size() < 10)
    throw WindowTooSmall("fewer than 10 usable nodes in the fit window");

  const Real denom = m * sxx - sx * sx;
  const Real slope = (m * sxy - sx * sy) / denom;
  const Real inter = (sy - slope * sx) / m;

  Real ss_res = 0, ss_tot = 0;
  const Real ybar = sy / m;
  for (size_t i = 0; i < xs.size(); ++i) {
    const Real fit = inter + slope * xs[i];
    ss_res += (ys[i] - fit) * (ys[i] - fit);
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
  }

  DecayFit out;
  out.rate = -slope;
  out.log_amp = inter;
  out.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  out.valid = out.r_squared > 0.999;
  out.nodes = static_cast<Index>(xs.size());
  out.window_lo = lo;
  out.window_hi = hi;
  return out;
}

DecayProbe decay_probe(const RadialGrid& g, const Array& v, const Array& phi,
                       Real sigma) {
  require_same_grid(g, v);
  require_same_grid(g, phi);
  if (!(sigma > 0)) throw InvalidParameter("probe needs sigma > 0");

  DecayProbe out;
  out.w = g.r.sqrt() * v;
  out.coeff = 2.0 * sigma - 2.0 * (2.0 * phi).sin() - 1.0 / (4.0 * g.r * g.r);

  // Smallest index past which the coefficient stays above sigma.
  Index i0 = g.n;
  for (Index i = g.n; i-- > 0;) {
    if (out.coeff[i] > sigma)
      i0 = i;
    else
      break;
  }
  if (i0 >= g.n - 2) {
    out.holds = false;
    out.r0 = g.r_max;
    out.i0 = g.n;
    return out;
  }
  out.i0 = i0;
  out.r0 = g.r[i0];

  const Real slack = 1e-8 * out.w.abs().maxCoeff();
  Real worst = -std::numeric_limits<Real>::infinity();
  for (Index i = i0 + 1; i + 1 < g.n; ++i) {
    const Real wpp = (out.w[i + 1] - 2.0 * out.w[i] + out.w[i - 1]) / (g.h * g.h);
    worst = std::max(worst, sigma * out.w[i] - wpp);
  }
  out.worst_defect = worst;
  out.holds = worst <= slack;
  return out;
}

Real radial_bound(const RadialGrid& g, const Array& f) {
  require_same_grid(g, f);
  const Array mag = f.abs();
  const Real slack = 1e-12 * mag.maxCoeff();
  for (Index i = 0; i + 1 < g.n; ++i)
    if (mag[i + 1] > mag[i] + slack)
      throw NotDecreasing("profile modulus increases away from the axis");
  const Real h1 = h1_norm(g, f);
  if (!(h1 > 0)) throw InvalidParameter("zero profile has no bound ratio");
  return (g.r.sqrt() * mag).maxCoeff() / h1;
}

namespace {

std::string format_value(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_csv(const Table& t) {
  if (t.columns.empty()) throw InvalidParameter("table needs at least one column");
  std::string out;
  for (size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += t.columns[c];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size())
      throw InvalidParameter("row width does not match the header");
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_value(row[c]);
    }
    out += '\n';
  }
  return out;
}

Table parse_csv(const std::string& text) {
  Table t;
  size_t pos = 0;
  auto next_line = [&](std::string& line) {
    if (pos >= text.size()) return false;
    const size_t nl = text.find('\n', pos);
    if (nl == std::string::npos)
      throw CorruptFile("csv line without LF terminator");
    line = text.substr(pos, nl - pos);
    pos = nl + 1;
    return true;
  };
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    size_t start = 0;
    while (true) {
      const size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return cells;
  };

  std::string line;
  if (!next_line(line)) throw CorruptFile("csv is empty");
  t.columns = split(line);
  while (next_line(line)) {
    const auto cells = split(line);
    if (cells.size() != t.columns.size())
      throw CorruptFile("csv row width does not match the header");
    std::vector<Real> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      char* end = nullptr;
      const Real v = std::strtod(cell.c_str(), &end);
      if (end != cell.c_str() + cell.size() || cell.empty())
        throw CorruptFile("csv cell is not a number: " + cell);
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_csv(const std::string& path, const Table& t) {
  io::atomic_write(path, to_csv(t));
}

Table read_csv(const std::string& path) { return parse_csv(io::read_file(path)); }

}  // namespace nematicon::analysis
