#include "nematicon/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace nematicon {

namespace {
// FFTW plan creation and destruction are not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft2D::Fft2D(Index n) : n_(n) {
  buf_ = reinterpret_cast<Complex*>(fftw_alloc_complex(static_cast<size_t>(n * n)));
  if (!buf_) throw Error("fftw buffer allocation failed");
  auto* b = reinterpret_cast<fftw_complex*>(buf_);
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), b, b,
                               FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), b, b,
                               FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plan_fwd_ || !plan_bwd_) throw Error("fftw planning failed");
}

Fft2D::~Fft2D() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(buf_);
}

void Fft2D::run(const ArrayXXc& in, ArrayXXc& out, bool fwd) {
  const size_t count = static_cast<size_t>(n_ * n_);
  if (in.rows() != n_ || in.cols() != n_)
    throw GridMismatch("field size does not match transform size");
  std::memcpy(buf_, in.data(), count * sizeof(Complex));
  fftw_execute(static_cast<fftw_plan>(fwd ? plan_fwd_ : plan_bwd_));
  out.resize(n_, n_);
  std::memcpy(out.data(), buf_, count * sizeof(Complex));
  if (!fwd) out *= 1.0 / static_cast<Real>(count);
}

void Fft2D::forward(const ArrayXXc& in, ArrayXXc& out) { run(in, out, true); }
void Fft2D::inverse(const ArrayXXc& in, ArrayXXc& out) { run(in, out, false); }

void plane_laplacian(SpectralWorkspace& ws, const ArrayXXc& f, ArrayXXc& out) {
  require_finite(f, "plane_laplacian input");
  ws.fft.forward(f, ws.s1);
  ws.s1 *= -ws.grid->k2;
  ws.fft.inverse(ws.s1, out);
}

ArrayXXr plane_laplacian(SpectralWorkspace& ws, const ArrayXXr& f) {
  ws.s2 = f.cast<Complex>();
  ArrayXXc lap;
  plane_laplacian(ws, ws.s2, lap);
  return lap.real();
}

ComplexPlaneField plane_laplacian(SpectralWorkspace& ws, const ComplexPlaneField& f) {
  ComplexPlaneField out(f.grid);
  plane_laplacian(ws, f.values, out.values);
  return out;
}

Complex h1_inner(SpectralWorkspace& ws, const ArrayXXc& f, const ArrayXXc& g) {
  const auto& gr = *ws.grid;
  Complex l2 = (f.conjugate() * g).sum() * (gr.h * gr.h);
  ws.fft.forward(f, ws.s1);
  ws.fft.forward(g, ws.s2);
  const Real scale = gr.h * gr.h / static_cast<Real>(gr.n * gr.n);
  Complex grad = (ws.s1.conjugate() * ws.s2 * gr.k2).sum() * scale;
  return l2 + grad;
}

Real h1_inner(SpectralWorkspace& ws, const ArrayXXr& f, const ArrayXXr& g) {
  ws.s1 = f.cast<Complex>();
  ws.s2 = g.cast<Complex>();
  ArrayXXc fc = ws.s1, gc = ws.s2;
  return h1_inner(ws, fc, gc).real();
}

Real h1_norm(SpectralWorkspace& ws, const ArrayXXc& f) {
  return std::sqrt(h1_inner(ws, f, f).real());
}

Real h1_norm(SpectralWorkspace& ws, const ArrayXXr& f) {
  ws.s1 = f.cast<Complex>();
  ArrayXXc fc = ws.s1;
  return std::sqrt(h1_inner(ws, fc, fc).real());
}

void spectral_shift(SpectralWorkspace& ws, const ArrayXXc& f, Real dx, Real dy,
                    ArrayXXc& out) {
  const auto& g = *ws.grid;
  ws.fft.forward(f, ws.s1);
  for (Index j = 0; j < g.n; ++j)
    for (Index i = 0; i < g.n; ++i)
      ws.s1(i, j) *= std::exp(Complex(0, -(g.k[i] * dx + g.k[j] * dy)));
  ws.fft.inverse(ws.s1, out);
}

}  // namespace nematicon
