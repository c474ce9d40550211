#pragma once

#include "nematicon/grid.hpp"
#include "nematicon/types.hpp"

#include <string>
#include <vector>

// Post-processing of computed profiles: exponential tail fits, a discrete
// convexity probe backing the decay bounds, pointwise bound diagnostics,
// and a small fixed-format CSV layer for archived tables.
namespace nematicon::analysis {

// Least-squares line through (r, log|f|) over a radius window given as
// fractions of r_max. Nodes with |f| <= 1e-14 are dropped; fewer than 10
// usable nodes throws WindowTooSmall. The window must start beyond the
// half-maximum radius, otherwise the fit would straddle the core.
struct DecayFit {
  Real rate = 0;       // m in |f| ~ exp(-m r)
  Real log_amp = 0;    // fitted intercept at r = 0
  Real r_squared = 0;  // coefficient of determination
  bool valid = false;  // r_squared > 0.999
  Index nodes = 0;
  Real window_lo = 0, window_hi = 0;
};

DecayFit fit_decay(const RadialGrid& g, const Array& f, Real lo_frac = 0.5,
                   Real hi_frac = 0.8);

// Tail convexity probe: with w = sqrt(r) v the stationary beam equation
// reads w'' = c(r) w, c(r) = 2 sigma - 2 sin 2phi - 1/(4 r^2). Past the
// first radius r0 where c stays above sigma, w'' >= sigma w must hold, the
// discrete comparison behind the exp(-sqrt(sigma) r) lower bound on decay.
struct DecayProbe {
  Array w;
  Array coeff;
  Real r0 = 0;
  Index i0 = 0;
  // Worst violation of w'' >= sigma w - slack beyond r0 (<= 0 when clean).
  Real worst_defect = 0;
  bool holds = false;
};

DecayProbe decay_probe(const RadialGrid& g, const Array& v, const Array& phi,
                       Real sigma);

// sup sqrt(r)|f| over the grid, relative to the H1 norm; uniformly bounded
// for profiles with nonincreasing modulus. Throws NotDecreasing when |f|
// increases somewhere (beyond roundoff slack).
Real radial_bound(const RadialGrid& g, const Array& f);

// CSV tables: comma separated, '.' decimal point, LF line ends, values
// printed with %.17g so emit -> parse -> emit is byte-identical.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Real>> rows;
};

std::string to_csv(const Table& t);
Table parse_csv(const std::string& text);
void write_csv(const std::string& path, const Table& t);
Table read_csv(const std::string& path);

}  // namespace nematicon::analysis
