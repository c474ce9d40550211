#pragma once

#include "nematicon/angle.hpp"
#include "nematicon/energy.hpp"
#include "nematicon/fft.hpp"
#include "nematicon/grid.hpp"
#include "nematicon/types.hpp"

#include <cstdint>
#include <memory>
#include <vector>

// Propagation of a complex beam along z by Strang splitting: a half kick
// from the medium response, a full spectral dispersion step, an angle
// re-solve at the new intensity, and the closing half kick. The angle field
// is carried between steps so each re-solve starts warm.
namespace nematicon::evolution {

struct StepTrace {
  Real z = 0;
  Real Q = 0;
  Real E = 0;
  Real edge_fraction = 0;  // beam mass fraction in the outer annulus
  bool box_warning = false;
};

struct Options {
  Real dz = 2e-3;
  // false drops the medium coupling entirely: pure dispersion, for which
  // closed-form references exist.
  bool couple = true;
  int record_every = 100;  // steps between trace rows (first/last always)
  angle::Options angle_opts;
  Real edge_width = 0.1;  // annulus width as a fraction of the half box
  Real edge_tol = 1e-6;   // fraction of Q tolerated there before warning
};

struct Result {
  ArrayXXc u;
  ArrayXXr theta;
  Real z = 0;
  int steps = 0;
  std::vector<StepTrace> trace;
  bool box_warning = false;
};

class Propagator {
 public:
  Propagator(PlaneGridPtr grid, const energy::Params& p, const Options& opts);

  // One Strang step in place.
  void step(ArrayXXc& u);
  StepTrace observe(const ArrayXXc& u);

  const ArrayXXr& theta() const { return theta_; }
  Real z() const { return z_; }

 private:
  PlaneGridPtr grid_;
  SpectralWorkspace ws_;
  energy::Params p_;
  Options opts_;
  ArrayXXr theta_;
  ArrayXXc dispersion_;  // exp(-i k^2 dz / 2) table
  ArrayXXr r2_;
  Real z_ = 0;
  bool theta_ready_ = false;

  void medium_kick(ArrayXXc& u, Real c);
  void refresh_theta(const ArrayXXc& u);
};

// Checks the start is well contained (99.9% of the mass inside r < L/4,
// otherwise InvalidParameter), then advances ceil(z_end/dz) steps.
Result propagate(const PlaneGridPtr& grid, const ArrayXXc& u0, Real z_end,
                 const energy::Params& p, const Options& opts = {});

// Minimal distance to the orbit of a reference pair (v_ref, phi_ref):
// translation found by cross-correlation of the moduli (integer lattice
// peak, quadratic subpixel refinement, spectral shift), then the phase by
// the H1 pairing with the shifted reference.
struct OrbitalFrame {
  Real dx = 0, dy = 0, alpha = 0;
};

struct Distance {
  Real total = 0;  // field part + angle part
  Real field = 0;  // || u - e^{i alpha} v(. - y) ||_H1
  Real angle = 0;  // || Theta(u) - phi(. - y) ||_H1
  OrbitalFrame frame;
};

Distance orbital_distance(SpectralWorkspace& ws, const ArrayXXc& u,
                          const ArrayXXc& v_ref, const ArrayXXr& phi_ref,
                          const energy::Params& p,
                          const angle::Options& aopts = {},
                          const ArrayXXr* theta_warm = nullptr);

// Radial profile placed on the plane, cubic Catmull-Rom in r with even
// reflection across the axis and zero beyond r_max.
ArrayXXr embed_radial(const PlaneGrid& pg, const RadialGrid& rg,
                      const Array& f);

// Fixed-charge preconditioned descent in the plane, used to settle an
// embedded profile into a stationary pair of the discrete plane system.
struct PlanePolish {
  ArrayXXc u;
  ArrayXXr theta;
  Real sigma = 0;
  Real residual = 0;
  int iterations = 0;
};

PlanePolish polish_plane(SpectralWorkspace& ws, const ArrayXXr& u0,
                         const energy::Params& p, int max_iter = 600,
                         Real tol = 1e-12, Real tau = 0.8);

// Perturbations for stability experiments. The bump multiplies the beam by
// 1 + eps * exp(-r^2 / (2 width^2)); the noise adds a seeded complex field
// scaled to H1 norm eps (reproducible across platforms: the generator maps
// 64-bit words to doubles explicitly). Both can be followed by a rescale
// back to the original charge.
ArrayXXc perturb_bump(const PlaneGrid& g, const ArrayXXc& u, Real eps,
                      Real width = 2.0);
ArrayXXc perturb_noise(SpectralWorkspace& ws, const ArrayXXc& u, Real eps,
                       uint64_t seed);
ArrayXXc rescale_charge(const PlaneGrid& g, const ArrayXXc& u, Real target_q2);

}  // namespace nematicon::evolution
