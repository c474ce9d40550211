#pragma once

#include "nematicon/grid.hpp"
#include "nematicon/types.hpp"

namespace nematicon {

// Thin RAII wrapper around FFTW complex-to-complex 2-D transforms of a fixed
// size. Plans are created with FFTW_ESTIMATE so the chosen algorithm, and with
// it the exact floating-point result, is reproducible across runs. Transforms
// go through an internal aligned buffer; inputs are copied in and out.
// forward() is unnormalized, inverse() carries the 1/n^2 factor.
class Fft2D {
 public:
  explicit Fft2D(Index n);
  ~Fft2D();
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  Index size() const { return n_; }
  void forward(const ArrayXXc& in, ArrayXXc& out);
  void inverse(const ArrayXXc& in, ArrayXXc& out);

 private:
  void run(const ArrayXXc& in, ArrayXXc& out, bool fwd);

  Index n_;
  void* plan_fwd_;
  void* plan_bwd_;
  Complex* buf_;
};

// A plane grid bundled with its transform and scratch storage. Solvers keep
// one workspace alive across calls instead of re-planning.
struct SpectralWorkspace {
  PlaneGridPtr grid;
  Fft2D fft;
  ArrayXXc s1, s2;  // scratch

  explicit SpectralWorkspace(PlaneGridPtr g)
      : grid(std::move(g)),
        fft(grid->n),
        s1(grid->n, grid->n),
        s2(grid->n, grid->n) {}
};

// Spectral Laplacian: transform, multiply by -|k|^2, transform back. Exact
// for band-limited fields.
void plane_laplacian(SpectralWorkspace& ws, const ArrayXXc& f, ArrayXXc& out);
ArrayXXr plane_laplacian(SpectralWorkspace& ws, const ArrayXXr& f);
ComplexPlaneField plane_laplacian(SpectralWorkspace& ws, const ComplexPlaneField& f);

// H1 forms on the plane: L2 part plus the Parseval gradient term
// (h^2/n^2) sum_k |k|^2 conj(F) G. Conjugation on the first argument.
Complex h1_inner(SpectralWorkspace& ws, const ArrayXXc& f, const ArrayXXc& g);
Real h1_inner(SpectralWorkspace& ws, const ArrayXXr& f, const ArrayXXr& g);
Real h1_norm(SpectralWorkspace& ws, const ArrayXXc& f);
Real h1_norm(SpectralWorkspace& ws, const ArrayXXr& f);

// Shift a field by (dx, dy) via the Fourier phase e^{-i k.y}; dx, dy need not
// be multiples of the lattice spacing.
void spectral_shift(SpectralWorkspace& ws, const ArrayXXc& f, Real dx, Real dy,
                    ArrayXXc& out);

}  // namespace nematicon
