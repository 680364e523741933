#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "ahns/fft.hpp"
#include "ahns/field.hpp"
#include "ahns/grid.hpp"
#include "ahns/spectral_ops.hpp"

namespace ahns {

// Deterministic standard normals: mt19937_64 + Box-Muller.  Avoids
// std::normal_distribution, whose draw sequence is implementation-defined.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : eng_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform_open();
    double u2 = uniform_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

 private:
  double uniform_open() {
    // (0, 1]: never feed log() a zero.
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  }
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

enum class InitialKind { shear_x2, shear_x3, taylor_green, random_divfree };

inline const char* initial_kind_name(InitialKind k) {
  switch (k) {
    case InitialKind::shear_x2: return "shear_x2";
    case InitialKind::shear_x3: return "shear_x3";
    case InitialKind::taylor_green: return "taylor_green";
    case InitialKind::random_divfree: return "random_divfree";
  }
  return "?";
}

inline InitialKind parse_initial_kind(const std::string& s) {
  if (s == "shear_x2") return InitialKind::shear_x2;
  if (s == "shear_x3") return InitialKind::shear_x3;
  if (s == "taylor_green") return InitialKind::taylor_green;
  if (s == "random_divfree") return InitialKind::random_divfree;
  throw std::invalid_argument(
      "unknown initial kind '" + s +
      "' (valid: shear_x2, shear_x3, taylor_green, random_divfree)");
}

struct InitialCondition {
  InitialKind kind = InitialKind::taylor_green;
  double amplitude = 1.0;
  // random_divfree only:
  std::uint64_t seed = 0;
  double spectrum_slope = -3.0;
};

namespace detail {

inline SpectralVelocity sampled_velocity(const WavenumberLattice& lat, Fft3& fft,
                                         auto&& f1, auto&& f2, auto&& f3) {
  const GridSpec& g = lat.grid;
  ScalarField a = ScalarField::zeros(g), b = ScalarField::zeros(g), c = ScalarField::zeros(g);
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i3 = 0; i3 < g.n3; ++i3) {
        const double x1 = i1 * g.spacing(1);
        const double x2 = i2 * g.spacing(2);
        const double x3 = i3 * g.spacing(3);
        const std::size_t m = a.index(i1, i2, i3);
        a.v[m] = f1(x1, x2, x3);
        b.v[m] = f2(x1, x2, x3);
        c.v[m] = f3(x1, x2, x3);
      }
  SpectralVelocity u{{fft.to_spectral(a), fft.to_spectral(b), fft.to_spectral(c)}};
  dealias_inplace(lat, u);
  leray_project_inplace(lat, u);
  return u;
}

}  // namespace detail

// Divergence-free random field with shell energy ~ k^spectrum_slope for
// integer shells k >= 1, Leray-projected, dealiased, and scaled so that
// ||u||_L2 equals amplitude.  Same seed, same grid -> identical field.
inline SpectralVelocity random_divfree(const WavenumberLattice& lat, Fft3& fft,
                                       std::uint64_t seed, double spectrum_slope,
                                       double amplitude) {
  if (!(amplitude > 0.0))
    throw std::invalid_argument("random_divfree: amplitude must be positive");
  const GridSpec& g = lat.grid;
  NormalSampler normal(seed);
  SpectralVelocity u = SpectralVelocity::zeros(g);
  for (int j = 0; j < 3; ++j) {
    ScalarField noise = ScalarField::zeros(g);
    for (auto& x : noise.v) x = normal();
    u.c[j] = fft.to_spectral(noise);
  }
  // Shape white noise to the requested shell spectrum: modal energy density
  // on shell k scales as k^(slope - 2) so that the shell total ~ k^slope.
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i3 = 0; i3 < g.nk3(); ++i3) {
        const std::size_t m = lat.index(i1, i2, i3);
        const double k1 = lat.k1[i1], k2 = lat.k2[i2], k3 = lat.k3[i3];
        const double kk = std::sqrt(k1 * k1 + k2 * k2 + k3 * k3);
        const double shape = kk < 1.0 ? 0.0 : std::pow(kk, 0.5 * (spectrum_slope - 2.0));
        for (int j = 0; j < 3; ++j) u.c[j].v[m] *= shape;
      }
  dealias_inplace(lat, u);
  leray_project_inplace(lat, u);
  const double norm = std::sqrt(l2_norm_sq(lat, u));
  if (norm == 0.0) throw std::runtime_error("random_divfree: degenerate draw");
  const double scale = amplitude / norm;
  for (auto& comp : u.c)
    for (auto& z : comp.v) z *= scale;
  return u;
}

// Initial data on the box fundamental wavenumber kappa = 2*pi/L:
//   shear_x2     -> A (sin(kappa x2), 0, 0)
//   shear_x3     -> A (sin(kappa x3), 0, 0)
//   taylor_green -> A (sin cos cos, -cos sin cos, 0)
inline SpectralVelocity make_initial(const InitialCondition& ic,
                                     const WavenumberLattice& lat, Fft3& fft) {
  const double A = ic.amplitude;
  const double kap = kTwoPi / lat.grid.box_length;
  auto zero3 = [](double, double, double) { return 0.0; };
  switch (ic.kind) {
    case InitialKind::shear_x2:
      return detail::sampled_velocity(
          lat, fft, [&](double, double x2, double) { return A * std::sin(kap * x2); },
          zero3, zero3);
    case InitialKind::shear_x3:
      return detail::sampled_velocity(
          lat, fft, [&](double, double, double x3) { return A * std::sin(kap * x3); },
          zero3, zero3);
    case InitialKind::taylor_green:
      return detail::sampled_velocity(
          lat, fft,
          [&](double x1, double x2, double x3) {
            return A * std::sin(kap * x1) * std::cos(kap * x2) * std::cos(kap * x3);
          },
          [&](double x1, double x2, double x3) {
            return -A * std::cos(kap * x1) * std::sin(kap * x2) * std::cos(kap * x3);
          },
          zero3);
    case InitialKind::random_divfree:
      return random_divfree(lat, fft, ic.seed, ic.spectrum_slope, A);
  }
  throw std::logic_error("make_initial: unknown kind");
}

}  // namespace ahns
