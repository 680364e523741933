#pragma once

#include <fftw3.h>

#include <complex>
#include <cstring>
#include <stdexcept>

#include "ahns/field.hpp"
#include "ahns/grid.hpp"

namespace ahns {

// FFTW-backed transforms between physical samples and Fourier coefficients.
//
// Convention: to_spectral divides by n1*n2*n3, so the coefficients are those
// of the trigonometric interpolant u(x) = sum_k u_hat(k) exp(i xi_k . x) and
// from_spectral(to_spectral(f)) == f.  Under this normalization the
// quadrature Parseval identity reads
//     sum_x f(x)^2 * (L/n)^3  =  sum_xi |F(xi)|^2 * L^3,
// i.e. the fixed spectral-side constant is the box volume L^3.
//
// Plans use FFTW_ESTIMATE so planning never depends on runtime measurement;
// results are reproducible run to run.
class Fft3 {
 public:
  explicit Fft3(const GridSpec& grid) : grid_(grid) {
    grid.validate();
    real_ = fftw_alloc_real(grid.physical_size());
    cplx_ = fftw_alloc_complex(grid.spectral_size());
    if (!real_ || !cplx_) throw std::bad_alloc();
    fwd_ = fftw_plan_dft_r2c_3d(grid.n1, grid.n2, grid.n3, real_, cplx_, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r_3d(grid.n1, grid.n2, grid.n3, cplx_, real_, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw std::runtime_error("Fft3: plan creation failed");
  }

  ~Fft3() {
    if (fwd_) fftw_destroy_plan(fwd_);
    if (bwd_) fftw_destroy_plan(bwd_);
    if (real_) fftw_free(real_);
    if (cplx_) fftw_free(cplx_);
  }

  Fft3(const Fft3&) = delete;
  Fft3& operator=(const Fft3&) = delete;

  const GridSpec& grid() const { return grid_; }

  SpectralScalar to_spectral(const ScalarField& f) {
    require_same_grid(f.grid, grid_, "Fft3::to_spectral");
    std::memcpy(real_, f.v.data(), sizeof(double) * grid_.physical_size());
    fftw_execute(fwd_);
    SpectralScalar out = SpectralScalar::zeros(grid_);
    const double scale = 1.0 / static_cast<double>(grid_.physical_size());
    for (std::size_t m = 0; m < grid_.spectral_size(); ++m)
      out.v[m] = cplx{cplx_[m][0] * scale, cplx_[m][1] * scale};
    return out;
  }

  ScalarField from_spectral(const SpectralScalar& F) {
    require_same_grid(F.grid, grid_, "Fft3::from_spectral");
    // c2r destroys its input, so stage through the internal buffer.
    for (std::size_t m = 0; m < grid_.spectral_size(); ++m) {
      cplx_[m][0] = F.v[m].real();
      cplx_[m][1] = F.v[m].imag();
    }
    fftw_execute(bwd_);
    ScalarField out = ScalarField::zeros(grid_);
    std::memcpy(out.v.data(), real_, sizeof(double) * grid_.physical_size());
    return out;
  }

 private:
  GridSpec grid_;
  double* real_ = nullptr;
  fftw_complex* cplx_ = nullptr;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
};

// One-dimensional counterpart used by the inequality checks.
// Same normalization: coefficients of the interpolant, Parseval constant L.
class Fft1 {
 public:
  Fft1(int n, double length) : n_(n), length_(length) {
    if (n < 4 || n % 2 != 0)
      throw std::invalid_argument("Fft1: n must be even and >= 4");
    if (!(length > 0.0)) throw std::invalid_argument("Fft1: length must be positive");
    real_ = fftw_alloc_real(n_);
    cplx_ = fftw_alloc_complex(n_ / 2 + 1);
    if (!real_ || !cplx_) throw std::bad_alloc();
    fwd_ = fftw_plan_dft_r2c_1d(n_, real_, cplx_, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r_1d(n_, cplx_, real_, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw std::runtime_error("Fft1: plan creation failed");
  }

  ~Fft1() {
    if (fwd_) fftw_destroy_plan(fwd_);
    if (bwd_) fftw_destroy_plan(bwd_);
    if (real_) fftw_free(real_);
    if (cplx_) fftw_free(cplx_);
  }

  Fft1(const Fft1&) = delete;
  Fft1& operator=(const Fft1&) = delete;

  int n() const { return n_; }
  double length() const { return length_; }

  std::vector<cplx> to_spectral(const std::vector<double>& f) {
    if (static_cast<int>(f.size()) != n_)
      throw std::invalid_argument("Fft1::to_spectral: size mismatch");
    std::memcpy(real_, f.data(), sizeof(double) * n_);
    fftw_execute(fwd_);
    std::vector<cplx> out(n_ / 2 + 1);
    const double scale = 1.0 / n_;
    for (int m = 0; m <= n_ / 2; ++m)
      out[m] = cplx{cplx_[m][0] * scale, cplx_[m][1] * scale};
    return out;
  }

  std::vector<double> from_spectral(const std::vector<cplx>& F) {
    if (static_cast<int>(F.size()) != n_ / 2 + 1)
      throw std::invalid_argument("Fft1::from_spectral: size mismatch");
    for (int m = 0; m <= n_ / 2; ++m) {
      cplx_[m][0] = F[m].real();
      cplx_[m][1] = F[m].imag();
    }
    fftw_execute(bwd_);
    std::vector<double> out(n_);
    std::memcpy(out.data(), real_, sizeof(double) * n_);
    return out;
  }

 private:
  int n_;
  double length_;
  double* real_ = nullptr;
  fftw_complex* cplx_ = nullptr;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
};

}  // namespace ahns
