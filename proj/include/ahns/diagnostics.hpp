#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <span>

#include "ahns/dissipation.hpp"
#include "ahns/fft.hpp"
#include "ahns/field.hpp"
#include "ahns/grid.hpp"
#include "ahns/spectral_ops.hpp"

namespace ahns {

// Energy functionals attached to one snapshot.  The m-triple is the exact
// dissipation split of the energy balance: d/dt ||u||^2 / 2 = -(m1 + m2 + m3)
// along exact trajectories in the reference regime.  mt*/mh* are the same
// splits weighted by |xi|^2 and |xi|^(2s); e_s = ||grad^s u||^2 + ||u||^2.
struct EnergyReport {
  double t = 0.0;
  double l2_sq = 0.0;
  double m1 = 0.0, m2 = 0.0, m3 = 0.0;
  double grad_sq = 0.0;
  double mt1 = 0.0, mt2 = 0.0, mt3 = 0.0;
  double e_s = 0.0;
  double mh1 = 0.0, mh2 = 0.0, mh3 = 0.0;
  double vortex_stretch = 0.0;
  double balance_residual = 0.0;

  double m_total() const { return m1 + m2 + m3; }
};

namespace detail {

// Shared accumulator: the three dissipation-split sums with an extra
// per-mode weight factor (1, |xi|^2, or |xi|^(2s)).
template <class ExtraFn>
std::array<double, 3> split_terms(const WavenumberLattice& lat, const SpectralVelocity& u,
                                  const MultiplierIndices& idx, ExtraFn&& extra) {
  const GridSpec& g = lat.grid;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i3 = 0; i3 < g.nk3(); ++i3) {
        const std::size_t m = lat.index(i1, i2, i3);
        const double w = lat.conjugate_weight(i3);
        const double x1 = std::abs(lat.xi1[i1]);
        const double x2 = std::abs(lat.xi2[i2]);
        const double x3 = lat.xi3[i3];
        const double e = extra(lat.xi_sq[m]);
        const double h_sq = x1 * x1 + x2 * x2;
        const double gam = (x1 == 0.0 ? 0.0 : std::pow(x1, 2.0 * idx.gamma)) +
                           (x2 == 0.0 ? 0.0 : std::pow(x2, 2.0 * idx.gamma));
        const double vert = x3 == 0.0 ? 0.0 : std::pow(x3, 2.0 * idx.alpha);
        const double uh_sq = std::norm(u.c[0].v[m]) + std::norm(u.c[1].v[m]);
        const double u3_sq = std::norm(u.c[2].v[m]);
        s1 += w * e * h_sq * uh_sq;
        s2 += w * e * gam * u3_sq;
        s3 += w * e * vert * (uh_sq + u3_sq);
      }
  const double V = g.volume();
  return {s1 * V, s2 * V, s3 * V};
}

}  // namespace detail

// m1 = ||grad_h u1||^2 + ||grad_h u2||^2
// m2 = ||M1^gamma u3||^2 + ||M2^gamma u3||^2
// m3 = sum_i ||M3^alpha u_i||^2
inline std::array<double, 3> m_terms(const WavenumberLattice& lat, const SpectralVelocity& u,
                                     const MultiplierIndices& idx) {
  return detail::split_terms(lat, u, idx, [](double) { return 1.0; });
}

// Same splits with an extra |xi|^(2s) weight (s-th gradient inside each norm).
inline std::array<double, 3> mhat_terms(const WavenumberLattice& lat,
                                        const SpectralVelocity& u,
                                        const MultiplierIndices& idx, double s) {
  return detail::split_terms(lat, u, idx,
                             [s](double q) { return std::pow(q, s); });
}

// Gradient-weighted split; identical to mhat_terms at s = 1.
inline std::array<double, 3> mtilde_terms(const WavenumberLattice& lat,
                                          const SpectralVelocity& u,
                                          const MultiplierIndices& idx) {
  return mhat_terms(lat, u, idx, 1.0);
}

inline double e_s_energy(const WavenumberLattice& lat, const SpectralVelocity& u, double s) {
  double total = 0.0;
  for (int j = 0; j < 3; ++j)
    total += weighted_norm_sq(lat, u.c[j], [s](double, double, double, double q) {
      return 1.0 + std::pow(q, s);
    });
  return total;
}

// Cubic vortex-stretching integral - sum_{i,j,k} int d_k u_i d_i u_j d_k u_j dx,
// the production term in the enstrophy balance.  Evaluated on the grid; for
// 2/3-dealiased fields the cubic quadrature is exact (3 kmax < n).
inline double vortex_stretching(const WavenumberLattice& lat, Fft3& fft,
                                const SpectralVelocity& u) {
  const GridSpec& g = lat.grid;
  std::array<std::array<ScalarField, 3>, 3> d;  // d[k][i] = d_k u_i
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      d[k][i] = fft.from_spectral(derivative(lat, u.c[i], k + 1));
  double s = 0.0;
  for (std::size_t m = 0; m < g.physical_size(); ++m) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) acc += d[k][i].v[m] * d[i][j].v[m] * d[k][j].v[m];
    s += acc;
  }
  return -s * g.cell_volume();
}

// Independent route to the same quantity: for divergence-free band-limited
// fields, integrating by parts turns the triple-gradient sum into
// int (u . grad u) . Laplacian(u) dx.  Both routes use exact cubic
// quadrature, so they must agree to rounding; comparing them cross-checks
// the derivative, transform, and quadrature plumbing at once.
inline double vortex_stretching_via_advection(const WavenumberLattice& lat, Fft3& fft,
                                              const SpectralVelocity& u) {
  const GridSpec& g = lat.grid;
  std::array<ScalarField, 3> uphys;
  for (int i = 0; i < 3; ++i) uphys[i] = fft.from_spectral(u.c[i]);
  double s = 0.0;
  for (int j = 0; j < 3; ++j) {
    // (u . grad) u_j on the grid
    ScalarField adv = ScalarField::zeros(g);
    for (int i = 0; i < 3; ++i) {
      const ScalarField di = fft.from_spectral(derivative(lat, u.c[j], i + 1));
      for (std::size_t m = 0; m < g.physical_size(); ++m)
        adv.v[m] += uphys[i].v[m] * di.v[m];
    }
    SpectralScalar lap = u.c[j];
    for (std::size_t m = 0; m < g.spectral_size(); ++m) lap.v[m] *= -lat.xi_sq[m];
    const ScalarField lap_phys = fft.from_spectral(lap);
    for (std::size_t m = 0; m < g.physical_size(); ++m) s += adv.v[m] * lap_phys.v[m];
  }
  return s * g.cell_volume();
}

// Horizontal part A of the vortex-stretching sum and its algebraic reduction
// to three vertical-derivative integrals (valid for divergence-free fields):
//   A =  sum_{i,j,k in {1,2}} int d_k u_i d_i u_j d_k u_j
//     = -sum_{i,j in {1,2}} int d_i u_j d_i u_j d_3 u_3
//       + int d_1 u_1 d_2 u_2 d_3 u_3 - int d_1 u_2 d_2 u_1 d_3 u_3.
// B is the remainder, so A + B = -vortex_stretching by definition.
struct KukavicaSplit {
  double a = 0.0;
  double b = 0.0;
  double a_identity_rhs = 0.0;
};

inline KukavicaSplit kukavica_split(const WavenumberLattice& lat, Fft3& fft,
                                    const SpectralVelocity& u) {
  const double div = relative_divergence(lat, u);
  if (div > 1.0e-10)
    std::fprintf(stderr,
                 "kukavica_split: field is not divergence-free (relative divergence "
                 "%.3e); the identity does not apply\n",
                 div);
  const GridSpec& g = lat.grid;
  std::array<std::array<ScalarField, 3>, 3> d;  // d[k][i] = d_k u_i
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      d[k][i] = fft.from_spectral(derivative(lat, u.c[i], k + 1));

  double total = 0.0, a = 0.0, rhs = 0.0;
  for (std::size_t m = 0; m < g.physical_size(); ++m) {
    double acc_total = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          acc_total += d[k][i].v[m] * d[i][j].v[m] * d[k][j].v[m];
    total += acc_total;

    double acc_a = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) acc_a += d[k][i].v[m] * d[i][j].v[m] * d[k][j].v[m];
    a += acc_a;

    const double d33 = d[2][2].v[m];
    double grad_h_sq = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) grad_h_sq += d[i][j].v[m] * d[i][j].v[m];
    rhs += -grad_h_sq * d33 + d[0][0].v[m] * d[1][1].v[m] * d33 -
           d[0][1].v[m] * d[1][0].v[m] * d33;
  }
  const double vol = g.cell_volume();
  KukavicaSplit out;
  out.a = a * vol;
  out.b = (total - a) * vol;
  out.a_identity_rhs = rhs * vol;
  return out;
}

// Exact three-way partition of ||grad^{s+1} u||^2 along the last derivative:
//   i1 = sum |xi|^2s |xi_h|^2 |u_h|^2   (horizontal derivatives, horizontal comps)
//   i2 = sum |xi|^2s |xi_h|^2 |u_3|^2   (horizontal derivatives, vertical comp)
//   i3 = sum |xi|^2s |xi_3|^2 |u|^2     (vertical derivatives, all comps)
// On an integer frequency lattice (box length 2 pi) each piece is dominated
// by the matching weighted dissipation term: i1 = mh1 identically, and with
// gamma >= 1, alpha >= 1 every mode satisfies |xi_h|^2 <= xi1^2gamma + xi2^2gamma
// and xi3^2 <= xi3^2alpha, so i2 <= mh2 and i3 <= mh3 hold term by term.
struct DominationSplit {
  double i1 = 0.0, i2 = 0.0, i3 = 0.0;
  double total = 0.0;  // ||grad^{s+1} u||^2 computed in one sweep
  double mh1 = 0.0, mh2 = 0.0, mh3 = 0.0;
};

inline DominationSplit domination_split(const WavenumberLattice& lat,
                                        const SpectralVelocity& u,
                                        const MultiplierIndices& idx, double s) {
  const GridSpec& g = lat.grid;
  DominationSplit out;
  double i1 = 0.0, i2 = 0.0, i3 = 0.0, total = 0.0;
  for (int p1 = 0; p1 < g.n1; ++p1)
    for (int p2 = 0; p2 < g.n2; ++p2)
      for (int p3 = 0; p3 < g.nk3(); ++p3) {
        const std::size_t m = lat.index(p1, p2, p3);
        const double w = lat.conjugate_weight(p3);
        const double x1 = std::abs(lat.xi1[p1]);
        const double x2 = std::abs(lat.xi2[p2]);
        const double x3 = lat.xi3[p3];
        const double q = lat.xi_sq[m];
        const double e = q == 0.0 ? (s == 0.0 ? 1.0 : 0.0) : std::pow(q, s);
        const double h_sq = x1 * x1 + x2 * x2;
        const double uh_sq = std::norm(u.c[0].v[m]) + std::norm(u.c[1].v[m]);
        const double u3_sq = std::norm(u.c[2].v[m]);
        i1 += w * e * h_sq * uh_sq;
        i2 += w * e * h_sq * u3_sq;
        i3 += w * e * x3 * x3 * (uh_sq + u3_sq);
        total += w * e * q * (uh_sq + u3_sq);
      }
  const double V = g.volume();
  out.i1 = i1 * V;
  out.i2 = i2 * V;
  out.i3 = i3 * V;
  out.total = total * V;
  const auto mh = mhat_terms(lat, u, idx, s);
  out.mh1 = mh[0];
  out.mh2 = mh[1];
  out.mh3 = mh[2];
  return out;
}

// |Delta(||u||^2 / 2) + int m dt| over a window of consecutive reports,
// trapezoid quadrature, normalized by the window's int m dt (0 if that
// integral vanishes).  Needs at least 3 reports to be meaningful.
inline double balance_residual(std::span<const EnergyReport> window) {
  if (window.size() < 3) return 0.0;
  double integral = 0.0;
  for (std::size_t i = 1; i < window.size(); ++i)
    integral += 0.5 * (window[i].t - window[i - 1].t) *
                (window[i].m_total() + window[i - 1].m_total());
  if (integral == 0.0) return 0.0;
  const double delta = 0.5 * (window.back().l2_sq - window.front().l2_sq);
  return std::abs(delta + integral) / integral;
}

// All spectral functionals of one snapshot; balance_residual is left 0 and
// filled by the caller, which owns the report history.
inline EnergyReport make_energy_report(const WavenumberLattice& lat, Fft3& fft,
                                       const SpectralVelocity& u,
                                       const MultiplierIndices& idx, double s, double t) {
  EnergyReport r;
  r.t = t;
  r.l2_sq = l2_norm_sq(lat, u);
  const auto m = m_terms(lat, u, idx);
  r.m1 = m[0];
  r.m2 = m[1];
  r.m3 = m[2];
  r.grad_sq = grad_norm_sq(lat, u);
  const auto mt = mtilde_terms(lat, u, idx);
  r.mt1 = mt[0];
  r.mt2 = mt[1];
  r.mt3 = mt[2];
  r.e_s = e_s_energy(lat, u, s);
  const auto mh = mhat_terms(lat, u, idx, s);
  r.mh1 = mh[0];
  r.mh2 = mh[1];
  r.mh3 = mh[2];
  r.vortex_stretch = vortex_stretching(lat, fft, u);
  r.balance_residual = 0.0;
  return r;
}

}  // namespace ahns
