#include <doctest.h>

#include <cmath>
#include <vector>

#include "ahns/diagnostics.hpp"
#include "ahns/inequality.hpp"
#include "ahns/initial.hpp"
#include "ahns/spectral_ops.hpp"

using namespace ahns;

namespace {

constexpr double kV = 8.0 * kPi * kPi * kPi;  // (2 pi)^3

SpectralVelocity shear_x3_unit(const WavenumberLattice& lat, Fft3& fft) {
  InitialCondition ic;
  ic.kind = InitialKind::shear_x3;
  ic.amplitude = 1.0;
  return make_initial(ic, lat, fft);
}

// Divergence-free velocity whose spectral content is identical on every grid
// that resolves the band: three per-mode seeded scalars, projected.
SpectralVelocity banded_divfree(const WavenumberLattice& lat, Fft3& fft,
                                std::uint64_t seed) {
  SpectralVelocity u = SpectralVelocity::zeros(lat.grid);
  for (int j = 0; j < 3; ++j)
    u.c[j] = fft.to_spectral(random_band_3d(lat, fft, seed + j, 1, 3));
  leray_project_inplace(lat, u);
  dealias_inplace(lat, u);
  return u;
}

}  // namespace

TEST_CASE("dissipation split on a vertical shear: closed forms") {
  const GridSpec g{16, 16, 16, kTwoPi};
  const WavenumberLattice lat = build_lattice(g);
  Fft3 fft(g);
  const MultiplierIndices idx{1.5, 1.0, 1.25};
  const SpectralVelocity u = shear_x3_unit(lat, fft);

  // u = sin(x3) e1: ||u||^2 = V/2, all dissipation lives in the vertical term
  // with |xi3| = 1 so every power of the multiplier equals 1.
  const double half_v = kV / 2.0;
  CHECK(l2_norm_sq(lat, u) == doctest::Approx(half_v).epsilon(1e-12));

  const auto m = m_terms(lat, u, idx);
  CHECK(std::abs(m[0]) <= 1e-12 * half_v);
  CHECK(std::abs(m[1]) <= 1e-12 * half_v);
  CHECK(m[2] == doctest::Approx(half_v).epsilon(1e-12));

  CHECK(grad_norm_sq(lat, u) == doctest::Approx(half_v).epsilon(1e-12));

  const auto mt = mtilde_terms(lat, u, idx);
  CHECK(std::abs(mt[0]) <= 1e-12 * half_v);
  CHECK(mt[2] == doctest::Approx(half_v).epsilon(1e-12));

  const auto mh = mhat_terms(lat, u, idx, 2.0);
  CHECK(mh[2] == doctest::Approx(half_v).epsilon(1e-12));

  // e_s = sum (1 + q^s)|u|^2: q = 1 on the shear modes, so e_s = 2 ||u||^2
  CHECK(e_s_energy(lat, u, 2.0) == doctest::Approx(2.0 * half_v).epsilon(1e-12));

  CHECK(std::abs(vortex_stretching(lat, fft, u)) <= 1e-12 * half_v);
}

TEST_CASE("dissipation split on the cellular vortex: closed forms") {
  const GridSpec g{16, 16, 16, kTwoPi};
  const WavenumberLattice lat = build_lattice(g);
  Fft3 fft(g);
  InitialCondition ic;
  ic.kind = InitialKind::taylor_green;
  ic.amplitude = 1.0;
  const SpectralVelocity u = make_initial(ic, lat, fft);

  // u = (sin x1 cos x2 cos x3, -cos x1 sin x2 cos x3, 0)
  CHECK(l2_norm_sq(lat, u) == doctest::Approx(kV / 4.0).epsilon(1e-12));

  const auto m = m_terms(lat, u, MultiplierIndices{1.5, 1.0, 1.25});
  CHECK(m[0] == doctest::Approx(kV / 2.0).epsilon(1e-12));  // 4 quarter-energy gradients
  CHECK(std::abs(m[1]) <= 1e-12 * kV);                      // u3 = 0
  CHECK(m[2] == doctest::Approx(kV / 4.0).epsilon(1e-12));  // |k3| = 1 throughout
}

TEST_CASE("weighted splits collapse to each other at special orders") {
  const GridSpec g{16, 16, 16, kTwoPi};
  const WavenumberLattice lat = build_lattice(g);
  Fft3 fft(g);
  const MultiplierIndices idx{1.6, 1.0, 1.3};
  const SpectralVelocity u = random_divfree(lat, fft, 21, -3.0, 1.0);

  const auto mt = mtilde_terms(lat, u, idx);
  const auto mh1 = mhat_terms(lat, u, idx, 1.0);
  const auto m = m_terms(lat, u, idx);
  const auto mh0 = mhat_terms(lat, u, idx, 0.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(mt[i] == mh1[i]);
    CHECK(m[i] == doctest::Approx(mh0[i]).epsilon(1e-14));
  }

  CHECK(e_s_energy(lat, u, 0.0) == doctest::Approx(2.0 * l2_norm_sq(lat, u)).epsilon(1e-13));
}

TEST_CASE("two independent routes to the stretching integral agree") {
  const GridSpec g{16, 16, 16, kTwoPi};
  const WavenumberLattice lat = build_lattice(g);
  Fft3 fft(g);
  for (int trial = 0; trial < 20; ++trial) {
    const SpectralVelocity u = random_divfree(lat, fft, 900 + trial, -3.0, 1.0);
    const double v1 = vortex_stretching(lat, fft, u);
    const double v2 = vortex_stretching_via_advection(lat, fft, u);
    const double scale = std::max({std::abs(v1), std::abs(v2), 1e-30});
    CHECK(std::abs(v1 - v2) <= 1e-8 * scale);
  }
}

TEST_CASE("horizontal block of the stretching sum reduces to vertical strain") {
  const GridSpec g{16, 16, 16, kTwoPi};
  const WavenumberLattice lat = build_lattice(g);
  Fft3 fft(g);
  for (int trial = 0; trial < 20; ++trial) {
    const SpectralVelocity u = random_divfree(lat, fft, 950 + trial, -3.0, 1.0);
    const KukavicaSplit ks = kukavica_split(lat, fft, u);
    const double vs = vortex_stretching(lat, fft, u);
    const double scale = std::max({std::abs(ks.a), std::abs(ks.b), std::abs(vs), 1e-30});
    CHECK(std::abs(ks.a - ks.a_identity_rhs) <= 1e-8 * scale);
    CHECK(std::abs(ks.a + ks.b + vs) <= 1e-12 * scale);
  }
}

TEST_CASE("balance residual: trapezoid on an exactly balanced decay") {
  // Fabricated reports along ||u(t)||^2 = e^{-2t} with m_total = e^{-2t}, so
  // d/dt ||u||^2/2 + m = 0 exactly and the only error is the quadrature's.
  auto window_for = [](double h) {
    std::vector<EnergyReport> w(3);
    for (int i = 0; i < 3; ++i) {
      const double t = i * h;
      w[i].t = t;
      w[i].l2_sq = std::exp(-2.0 * t);
      w[i].m1 = std::exp(-2.0 * t);
    }
    return w;
  };
  const std::vector<EnergyReport> coarse = window_for(0.01);
  const std::vector<EnergyReport> fine = window_for(0.005);
  const double rc = balance_residual(coarse);
  const double rf = balance_residual(fine);
  CHECK(rc > 0.0);
  CHECK(rc < 1e-3);
  const double ratio = rc / rf;
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);

  // degenerate windows
  std::vector<EnergyReport> two(coarse.begin(), coarse.begin() + 2);
  CHECK(balance_residual(two) == 0.0);
  std::vector<EnergyReport> idle(3);
  for (int i = 0; i < 3; ++i) idle[i].t = i * 0.01;  // all-zero m
  CHECK(balance_residual(idle) == 0.0);
}

TEST_CASE("derivative-count partition of the higher-order gradient") {
  const GridSpec g{16, 16, 16, kTwoPi};
  const WavenumberLattice lat = build_lattice(g);
  Fft3 fft(g);
  const MultiplierIndices idx{1.5, 1.0, 1.25};
  const SpectralVelocity u = random_divfree(lat, fft, 31, -3.0, 1.0);

  const DominationSplit ds = domination_split(lat, u, idx, 2.0);
  CHECK(ds.total > 0.0);
  CHECK(std::abs(ds.i1 + ds.i2 + ds.i3 - ds.total) <= 1e-12 * ds.total);

  // the first piece *is* the first weighted dissipation term
  CHECK(ds.i1 == doctest::Approx(ds.mh1).epsilon(1e-14));

  // on the integer lattice each remaining piece is dominated term by term
  CHECK(ds.i2 <= ds.mh2 * (1.0 + 1e-12));
  CHECK(ds.i3 <= ds.mh3 * (1.0 + 1e-12));

  // s = 0 collapses the total onto the plain gradient energy
  const DominationSplit d0 = domination_split(lat, u, idx, 0.0);
  CHECK(d0.total == doctest::Approx(grad_norm_sq(lat, u)).epsilon(1e-13));
}

TEST_CASE("partition ratios are unchanged under grid refinement") {
  const MultiplierIndices idx{1.5, 1.0, 1.25};
  auto ratios = [&](int n) {
    const GridSpec g{n, n, n, kTwoPi};
    const WavenumberLattice lat = build_lattice(g);
    Fft3 fft(g);
    const SpectralVelocity u = banded_divfree(lat, fft, 71);
    const DominationSplit ds = domination_split(lat, u, idx, 2.0);
    return std::array<double, 3>{ds.i2 / ds.mh2, ds.i3 / ds.mh3,
                                 ds.total / (ds.mh1 + ds.mh2 + ds.mh3)};
  };
  const auto coarse = ratios(16);
  const auto fine = ratios(32);
  for (int i = 0; i < 3; ++i) {
    CHECK(coarse[i] <= 1.0 + 1e-12);
    CHECK(std::abs(coarse[i] - fine[i]) <= 1e-10 * std::abs(coarse[i]));
  }
}

TEST_CASE("snapshot report agrees with the standalone functionals") {
  const GridSpec g{16, 16, 16, kTwoPi};
  const WavenumberLattice lat = build_lattice(g);
  Fft3 fft(g);
  const MultiplierIndices idx{1.5, 1.0, 1.25};
  const SpectralVelocity u = random_divfree(lat, fft, 64, -3.0, 0.8);

  const EnergyReport r = make_energy_report(lat, fft, u, idx, 2.0, 0.375);
  CHECK(r.t == 0.375);
  CHECK(r.l2_sq == l2_norm_sq(lat, u));
  const auto m = m_terms(lat, u, idx);
  CHECK(r.m1 == m[0]);
  CHECK(r.m2 == m[1]);
  CHECK(r.m3 == m[2]);
  CHECK(r.m_total() == m[0] + m[1] + m[2]);
  CHECK(r.grad_sq == grad_norm_sq(lat, u));
  const auto mt = mtilde_terms(lat, u, idx);
  CHECK(r.mt1 == mt[0]);
  CHECK(r.mt3 == mt[2]);
  CHECK(r.e_s == e_s_energy(lat, u, 2.0));
  const auto mh = mhat_terms(lat, u, idx, 2.0);
  CHECK(r.mh1 == mh[0]);
  CHECK(r.mh2 == mh[1]);
  CHECK(r.mh3 == mh[2]);
  CHECK(r.vortex_stretch == vortex_stretching(lat, fft, u));
  CHECK(r.balance_residual == 0.0);
}
