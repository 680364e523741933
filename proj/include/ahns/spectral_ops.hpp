#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "ahns/field.hpp"
#include "ahns/grid.hpp"

namespace ahns {

// ---------------------------------------------------------------------------
// Norms and inner products.  Every L^2 quantity in the project goes through
// these two sums so the normalization convention lives in exactly one place:
//   physical:  sum f^2 * cell_volume
//   spectral:  volume * sum_over_full_lattice |F|^2
// The two agree to rounding for band-limited data (quadrature Parseval).
// ---------------------------------------------------------------------------

inline double l2_norm_sq(const ScalarField& f) {
  double s = 0.0;
  for (double x : f.v) s += x * x;
  return s * f.grid.cell_volume();
}

inline double l2_norm_sq(const WavenumberLattice& lat, const SpectralScalar& F) {
  require_same_grid(F.grid, lat.grid, "l2_norm_sq");
  const int nk = lat.grid.nk3();
  double s = 0.0;
  for (std::size_t m = 0; m < F.v.size(); ++m)
    s += lat.conjugate_weight(static_cast<int>(m % nk)) * std::norm(F.v[m]);
  return s * lat.grid.volume();
}

inline double l2_norm_sq(const WavenumberLattice& lat, const SpectralVelocity& u) {
  return l2_norm_sq(lat, u.c[0]) + l2_norm_sq(lat, u.c[1]) + l2_norm_sq(lat, u.c[2]);
}

inline double inner_product(const WavenumberLattice& lat, const SpectralScalar& F,
                            const SpectralScalar& G) {
  require_same_grid(F.grid, lat.grid, "inner_product");
  require_same_grid(G.grid, lat.grid, "inner_product");
  const int nk = lat.grid.nk3();
  double s = 0.0;
  for (std::size_t m = 0; m < F.v.size(); ++m)
    s += lat.conjugate_weight(static_cast<int>(m % nk)) *
         (F.v[m].real() * G.v[m].real() + F.v[m].imag() * G.v[m].imag());
  return s * lat.grid.volume();
}

inline double inner_product(const WavenumberLattice& lat, const SpectralVelocity& u,
                            const SpectralVelocity& v) {
  return inner_product(lat, u.c[0], v.c[0]) + inner_product(lat, u.c[1], v.c[1]) +
         inner_product(lat, u.c[2], v.c[2]);
}

// Generic weighted spectral sum: volume * sum w(mode) * weight(xi) * |F|^2.
template <class WeightFn>
double weighted_norm_sq(const WavenumberLattice& lat, const SpectralScalar& F,
                        WeightFn&& weight) {
  require_same_grid(F.grid, lat.grid, "weighted_norm_sq");
  const GridSpec& g = lat.grid;
  double s = 0.0;
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i3 = 0; i3 < g.nk3(); ++i3) {
        const std::size_t m = lat.index(i1, i2, i3);
        s += lat.conjugate_weight(i3) *
             weight(lat.xi1[i1], lat.xi2[i2], lat.xi3[i3], lat.xi_sq[m]) *
             std::norm(F.v[m]);
      }
  return s * g.volume();
}

inline double grad_norm_sq(const WavenumberLattice& lat, const SpectralVelocity& u) {
  const int nk = lat.grid.nk3();
  double s = 0.0;
  for (int j = 0; j < 3; ++j)
    for (std::size_t m = 0; m < u.c[j].v.size(); ++m)
      s += lat.conjugate_weight(static_cast<int>(m % nk)) * lat.xi_sq[m] *
           std::norm(u.c[j].v[m]);
  return s * lat.grid.volume();
}

// ---------------------------------------------------------------------------
// Fourier multipliers.
// ---------------------------------------------------------------------------

// |xi_axis|^exponent with the zero-frequency convention 0^e = 0 for e > 0;
// exponent == 0 is the identity.  Negative exponents are rejected.
inline SpectralScalar apply_multiplier(const WavenumberLattice& lat,
                                       const SpectralScalar& F, int axis,
                                       double exponent) {
  require_same_grid(F.grid, lat.grid, "apply_multiplier");
  if (axis < 1 || axis > 3)
    throw std::invalid_argument("apply_multiplier: axis must be 1, 2, or 3");
  if (exponent < 0.0)
    throw std::invalid_argument("apply_multiplier: exponent must be >= 0 (got " +
                                std::to_string(exponent) + ")");
  SpectralScalar out = F;
  if (exponent == 0.0) return out;
  const GridSpec& g = lat.grid;
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i3 = 0; i3 < g.nk3(); ++i3) {
        const double xi = axis == 1 ? lat.xi1[i1] : axis == 2 ? lat.xi2[i2] : lat.xi3[i3];
        const double a = std::abs(xi);
        out.v[lat.index(i1, i2, i3)] *= (a == 0.0 ? 0.0 : std::pow(a, exponent));
      }
  return out;
}

// Isotropic |xi|^exponent (realizes the s-th gradient weight for exponent = s).
inline SpectralScalar apply_iso_multiplier(const WavenumberLattice& lat,
                                           const SpectralScalar& F, double exponent) {
  require_same_grid(F.grid, lat.grid, "apply_iso_multiplier");
  if (exponent < 0.0)
    throw std::invalid_argument("apply_iso_multiplier: exponent must be >= 0");
  SpectralScalar out = F;
  if (exponent == 0.0) return out;
  for (std::size_t m = 0; m < F.v.size(); ++m) {
    const double q = lat.xi_sq[m];
    out.v[m] *= (q == 0.0 ? 0.0 : std::pow(q, 0.5 * exponent));
  }
  return out;
}

// Spectral derivative along one axis: multiply by i*xi_axis.
inline SpectralScalar derivative(const WavenumberLattice& lat, const SpectralScalar& F,
                                 int axis) {
  require_same_grid(F.grid, lat.grid, "derivative");
  if (axis < 1 || axis > 3) throw std::invalid_argument("derivative: axis must be 1, 2, or 3");
  SpectralScalar out = F;
  const GridSpec& g = lat.grid;
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i3 = 0; i3 < g.nk3(); ++i3) {
        const double xi = axis == 1 ? lat.xi1[i1] : axis == 2 ? lat.xi2[i2] : lat.xi3[i3];
        const std::size_t m = lat.index(i1, i2, i3);
        out.v[m] = cplx{-xi * F.v[m].imag(), xi * F.v[m].real()};
      }
  return out;
}

// ---------------------------------------------------------------------------
// Dealiasing and the divergence-free projection.
// ---------------------------------------------------------------------------

inline void dealias_inplace(const WavenumberLattice& lat, SpectralScalar& F) {
  require_same_grid(F.grid, lat.grid, "dealias");
  for (std::size_t m = 0; m < F.v.size(); ++m)
    if (!lat.mask[m]) F.v[m] = cplx{0.0, 0.0};
}

inline SpectralScalar dealias(const WavenumberLattice& lat, const SpectralScalar& F) {
  SpectralScalar out = F;
  dealias_inplace(lat, out);
  return out;
}

inline void dealias_inplace(const WavenumberLattice& lat, SpectralVelocity& u) {
  for (auto& comp : u.c) dealias_inplace(lat, comp);
}

// u_hat <- u_hat - xi (xi . u_hat)/|xi|^2; the mean mode passes through.
inline void leray_project_inplace(const WavenumberLattice& lat, SpectralVelocity& u) {
  require_same_grid(u.grid(), lat.grid, "leray_project");
  const GridSpec& g = lat.grid;
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i3 = 0; i3 < g.nk3(); ++i3) {
        const std::size_t m = lat.index(i1, i2, i3);
        const double q = lat.xi_sq[m];
        if (q == 0.0) continue;
        const double x1 = lat.xi1[i1], x2 = lat.xi2[i2], x3 = lat.xi3[i3];
        const cplx dot = x1 * u.c[0].v[m] + x2 * u.c[1].v[m] + x3 * u.c[2].v[m];
        const cplx f = dot / q;
        u.c[0].v[m] -= x1 * f;
        u.c[1].v[m] -= x2 * f;
        u.c[2].v[m] -= x3 * f;
      }
}

inline SpectralVelocity leray_project(const WavenumberLattice& lat,
                                      const SpectralVelocity& u) {
  SpectralVelocity out = u;
  leray_project_inplace(lat, out);
  return out;
}

inline SpectralScalar divergence(const WavenumberLattice& lat, const SpectralVelocity& u) {
  require_same_grid(u.grid(), lat.grid, "divergence");
  SpectralScalar out = SpectralScalar::zeros(lat.grid);
  const GridSpec& g = lat.grid;
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i3 = 0; i3 < g.nk3(); ++i3) {
        const std::size_t m = lat.index(i1, i2, i3);
        const cplx dot = lat.xi1[i1] * u.c[0].v[m] + lat.xi2[i2] * u.c[1].v[m] +
                         lat.xi3[i3] * u.c[2].v[m];
        out.v[m] = cplx{-dot.imag(), dot.real()};  // i * (xi . u_hat)
      }
  return out;
}

// L^2-relative divergence: ||xi . u_hat|| / ||  |xi| |u_hat|  ||, 0 for u = 0.
// Robust scale for asserting the divergence-free invariant after projection.
inline double relative_divergence(const WavenumberLattice& lat, const SpectralVelocity& u) {
  require_same_grid(u.grid(), lat.grid, "relative_divergence");
  const int nk = lat.grid.nk3();
  double num = 0.0, den = 0.0;
  for (std::size_t m = 0; m < u.c[0].v.size(); ++m) {
    const double w = lat.conjugate_weight(static_cast<int>(m % nk));
    const int i3 = static_cast<int>(m % nk);
    const int i2 = static_cast<int>((m / nk) % lat.grid.n2);
    const int i1 = static_cast<int>(m / (static_cast<std::size_t>(nk) * lat.grid.n2));
    const cplx dot = lat.xi1[i1] * u.c[0].v[m] + lat.xi2[i2] * u.c[1].v[m] +
                     lat.xi3[i3] * u.c[2].v[m];
    const double mag_sq =
        std::norm(u.c[0].v[m]) + std::norm(u.c[1].v[m]) + std::norm(u.c[2].v[m]);
    num += w * std::norm(dot);
    den += w * lat.xi_sq[m] * mag_sq;
  }
  return den == 0.0 ? 0.0 : std::sqrt(num / den);
}

// Worst per-mode ratio |xi . u_hat| / |u_hat|, skipping modes whose magnitude
// is negligible against the field's largest coefficient (their content is
// projection roundoff, not signal).
inline double max_divergence_ratio(const WavenumberLattice& lat, const SpectralVelocity& u) {
  require_same_grid(u.grid(), lat.grid, "max_divergence_ratio");
  const int nk = lat.grid.nk3();
  double peak_sq = 0.0;
  for (std::size_t m = 0; m < u.c[0].v.size(); ++m)
    peak_sq = std::max(peak_sq, std::norm(u.c[0].v[m]) + std::norm(u.c[1].v[m]) +
                                    std::norm(u.c[2].v[m]));
  if (peak_sq == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t m = 0; m < u.c[0].v.size(); ++m) {
    const double mag_sq =
        std::norm(u.c[0].v[m]) + std::norm(u.c[1].v[m]) + std::norm(u.c[2].v[m]);
    if (mag_sq <= 1.0e-28 * peak_sq) continue;
    const int i3 = static_cast<int>(m % nk);
    const int i2 = static_cast<int>((m / nk) % lat.grid.n2);
    const int i1 = static_cast<int>(m / (static_cast<std::size_t>(nk) * lat.grid.n2));
    const cplx dot = lat.xi1[i1] * u.c[0].v[m] + lat.xi2[i2] * u.c[1].v[m] +
                     lat.xi3[i3] * u.c[2].v[m];
    worst = std::max(worst, std::abs(dot) / std::sqrt(mag_sq));
  }
  return worst;
}

}  // namespace ahns
