#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include "ahns/grid.hpp"

namespace ahns {

using cplx = std::complex<double>;

// Real samples on the physical grid, row-major with x3 fastest.
struct ScalarField {
  GridSpec grid;
  std::vector<double> v;

  static ScalarField zeros(const GridSpec& g) {
    g.validate();
    return ScalarField{g, std::vector<double>(g.physical_size(), 0.0)};
  }
  std::size_t index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * grid.n2 + i2) * grid.n3 + i3;
  }
};

// Fourier coefficients in half-spectrum storage (k3 >= 0); the implied
// k3 < 0 modes are the conjugates, so represented fields are real.
struct SpectralScalar {
  GridSpec grid;
  std::vector<cplx> v;

  static SpectralScalar zeros(const GridSpec& g) {
    g.validate();
    return SpectralScalar{g, std::vector<cplx>(g.spectral_size(), cplx{0.0, 0.0})};
  }
  std::size_t index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * grid.n2 + i2) * grid.nk3() + i3;
  }
};

struct SpectralVelocity {
  std::array<SpectralScalar, 3> c;

  static SpectralVelocity zeros(const GridSpec& g) {
    return SpectralVelocity{{SpectralScalar::zeros(g), SpectralScalar::zeros(g),
                             SpectralScalar::zeros(g)}};
  }
  const GridSpec& grid() const { return c[0].grid; }
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where) {
  if (!(a == b)) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

}  // namespace ahns
