#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace ahns {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Uniform periodic box [0, L)^3 sampled on an n1 x n2 x n3 grid.
// Axis 3 is the distinguished ("vertical") direction throughout.
struct GridSpec {
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;
  double box_length = kTwoPi;

  void validate() const {
    auto bad = [](int n) { return n < 4 || n % 2 != 0; };
    if (bad(n1) || bad(n2) || bad(n3))
      throw std::invalid_argument("GridSpec: n1,n2,n3 must be even and >= 4 (got " +
                                  std::to_string(n1) + "," + std::to_string(n2) + "," +
                                  std::to_string(n3) + ")");
    if (!(box_length > 0.0))
      throw std::invalid_argument("GridSpec: box_length must be positive");
  }

  int nk3() const { return n3 / 2 + 1; }
  std::size_t physical_size() const {
    return static_cast<std::size_t>(n1) * n2 * n3;
  }
  // Half-spectrum storage: axis 3 holds only k3 = 0..n3/2; the k3 < 0 modes
  // are implied by conjugate symmetry of real fields.
  std::size_t spectral_size() const {
    return static_cast<std::size_t>(n1) * n2 * nk3();
  }
  double spacing(int axis) const {
    const int n = axis == 1 ? n1 : axis == 2 ? n2 : n3;
    return box_length / n;
  }
  double cell_volume() const { return spacing(1) * spacing(2) * spacing(3); }
  double volume() const { return box_length * box_length * box_length; }

  bool operator==(const GridSpec&) const = default;
};

// Integer frequency for slot i of an n-point axis: 0,1,...,n/2-1,-n/2,...,-1.
inline int fft_frequency(int i, int n) { return i <= n / 2 ? i : i - n; }

// Precomputed wavenumber data for one grid.  xi_i = (2*pi/L) * k_i.
// The dealias mask keeps |k_i| <= floor(n_i/3) on every axis (2/3 rule),
// so quadratic products of kept modes never alias back into kept modes.
struct WavenumberLattice {
  GridSpec grid;
  std::vector<int> k1, k2, k3;        // integer frequencies per axis slot
  std::vector<double> xi1, xi2, xi3;  // physical frequencies per axis slot
  std::vector<double> xi_sq;          // |xi|^2 per stored mode
  std::vector<std::uint8_t> mask;     // 1 = kept by the 2/3 rule

  std::size_t index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * grid.n2 + i2) * grid.nk3() + i3;
  }

  // Each stored mode with 0 < k3 < n3/2 stands for itself and its conjugate
  // partner; the k3 = 0 and k3 = n3/2 planes are stored in full.
  double conjugate_weight(int i3) const {
    return (i3 == 0 || 2 * i3 == grid.n3) ? 1.0 : 2.0;
  }
};

inline WavenumberLattice build_lattice(const GridSpec& grid) {
  grid.validate();
  WavenumberLattice lat;
  lat.grid = grid;
  const double scale = kTwoPi / grid.box_length;

  lat.k1.resize(grid.n1);
  lat.xi1.resize(grid.n1);
  for (int i = 0; i < grid.n1; ++i) {
    lat.k1[i] = fft_frequency(i, grid.n1);
    lat.xi1[i] = scale * lat.k1[i];
  }
  lat.k2.resize(grid.n2);
  lat.xi2.resize(grid.n2);
  for (int i = 0; i < grid.n2; ++i) {
    lat.k2[i] = fft_frequency(i, grid.n2);
    lat.xi2[i] = scale * lat.k2[i];
  }
  lat.k3.resize(grid.nk3());
  lat.xi3.resize(grid.nk3());
  for (int i = 0; i < grid.nk3(); ++i) {
    lat.k3[i] = i;  // half axis: k3 >= 0 only
    lat.xi3[i] = scale * i;
  }

  lat.xi_sq.resize(grid.spectral_size());
  lat.mask.resize(grid.spectral_size());
  const int kmax1 = grid.n1 / 3, kmax2 = grid.n2 / 3, kmax3 = grid.n3 / 3;
  for (int i1 = 0; i1 < grid.n1; ++i1)
    for (int i2 = 0; i2 < grid.n2; ++i2)
      for (int i3 = 0; i3 < grid.nk3(); ++i3) {
        const std::size_t m = lat.index(i1, i2, i3);
        const double x1 = lat.xi1[i1], x2 = lat.xi2[i2], x3 = lat.xi3[i3];
        lat.xi_sq[m] = x1 * x1 + x2 * x2 + x3 * x3;
        const bool keep = std::abs(lat.k1[i1]) <= kmax1 &&
                          std::abs(lat.k2[i2]) <= kmax2 &&
                          std::abs(lat.k3[i3]) <= kmax3;
        lat.mask[m] = keep ? 1 : 0;
      }
  return lat;
}

}  // namespace ahns
