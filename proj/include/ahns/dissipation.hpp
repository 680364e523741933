#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ahns/grid.hpp"

namespace ahns {

// Dissipation exponents.  alpha weights the vertical axis for every
// component, beta the horizontal axes of the horizontal components, gamma
// the horizontal axes of the vertical component.  The global-regularity
// regime of interest is alpha >= 3/2, beta = 1, 5/4 <= gamma <= alpha;
// theorem_regime is derived from the exponents and never set directly.
struct MultiplierIndices {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;

  void validate() const {
    if (alpha < 0.0 || beta < 0.0 || gamma < 0.0)
      throw std::invalid_argument("MultiplierIndices: exponents must be >= 0");
  }

  bool theorem_regime() const {
    return alpha >= 1.5 && beta == 1.0 && gamma >= 1.25 && gamma <= alpha;
  }
};

// Per-mode, per-component damping rates D_j(xi) >= 0 with D_j(0) = 0:
//   D_1 = D_2 = |xi_1|^(2 beta)  + |xi_2|^(2 beta)  + |xi_3|^(2 alpha)
//   D_3       = |xi_1|^(2 gamma) + |xi_2|^(2 gamma) + |xi_3|^(2 alpha)
// With alpha = beta = gamma = 1 every D_j is the plain Laplacian symbol |xi|^2.
struct DissipationSymbol {
  std::vector<double> d1, d2, d3;

  static DissipationSymbol zero(const WavenumberLattice& lat) {
    DissipationSymbol s;
    s.d1.assign(lat.grid.spectral_size(), 0.0);
    s.d2 = s.d1;
    s.d3 = s.d1;
    return s;
  }
};

enum class SymbolVariant {
  main,
  // Adds the full Laplacian |xi|^2 to every component on top of the
  // anisotropic terms.  Exposed for symbol-level experimentation only.
  laplacian_plus_aniso,
};

inline DissipationSymbol dissipation_symbol(const MultiplierIndices& idx,
                                            const WavenumberLattice& lat,
                                            SymbolVariant variant = SymbolVariant::main) {
  idx.validate();
  const GridSpec& g = lat.grid;
  DissipationSymbol sym;
  sym.d1.resize(g.spectral_size());
  sym.d2.resize(g.spectral_size());
  sym.d3.resize(g.spectral_size());
  // 0^0 would otherwise contribute 1; the zero frequency never dissipates.
  auto term = [](double xi, double two_theta) {
    const double a = std::abs(xi);
    return a == 0.0 ? 0.0 : std::pow(a, two_theta);
  };
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i3 = 0; i3 < g.nk3(); ++i3) {
        const std::size_t m = lat.index(i1, i2, i3);
        const double x1 = lat.xi1[i1], x2 = lat.xi2[i2], x3 = lat.xi3[i3];
        const double vert = term(x3, 2.0 * idx.alpha);
        double h12 = term(x1, 2.0 * idx.beta) + term(x2, 2.0 * idx.beta);
        double h3 = term(x1, 2.0 * idx.gamma) + term(x2, 2.0 * idx.gamma);
        if (variant == SymbolVariant::laplacian_plus_aniso) {
          h12 += lat.xi_sq[m];
          h3 += lat.xi_sq[m];
        }
        sym.d1[m] = h12 + vert;
        sym.d3[m] = h3 + vert;
        sym.d2[m] = sym.d1[m];
        if (lat.xi_sq[m] == 0.0) sym.d1[m] = sym.d2[m] = sym.d3[m] = 0.0;
      }
  return sym;
}

}  // namespace ahns
