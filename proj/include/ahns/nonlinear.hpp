#pragma once

#include "ahns/fft.hpp"
#include "ahns/field.hpp"
#include "ahns/grid.hpp"
#include "ahns/spectral_ops.hpp"

namespace ahns {

// Projected convective term N(u) = -P [ (u . grad) u ], dealiased.
//
// Pseudospectral evaluation: spectral derivatives, pointwise products on the
// grid, transform back, 2/3-rule truncation, divergence-free projection.
// For inputs already inside the dealias mask the kept coefficients of the
// product equal the exact convolution (quadratic aliases land outside the
// mask), so the result is skew against u: <N(u), u> = 0 to rounding.
inline SpectralVelocity nonlinear_term(const WavenumberLattice& lat, Fft3& fft,
                                       const SpectralVelocity& u) {
  require_same_grid(u.grid(), lat.grid, "nonlinear_term");
  const GridSpec& g = lat.grid;

  std::array<ScalarField, 3> up;  // physical velocity samples
  for (int i = 0; i < 3; ++i) up[i] = fft.from_spectral(u.c[i]);

  SpectralVelocity out = SpectralVelocity::zeros(g);
  ScalarField conv = ScalarField::zeros(g);
  for (int j = 0; j < 3; ++j) {
    for (auto& x : conv.v) x = 0.0;
    for (int i = 0; i < 3; ++i) {
      const ScalarField dj = fft.from_spectral(derivative(lat, u.c[j], i + 1));
      for (std::size_t m = 0; m < conv.v.size(); ++m) conv.v[m] += up[i].v[m] * dj.v[m];
    }
    out.c[j] = fft.to_spectral(conv);
  }
  dealias_inplace(lat, out);
  leray_project_inplace(lat, out);
  for (auto& comp : out.c)
    for (auto& z : comp.v) z = -z;
  return out;
}

}  // namespace ahns
