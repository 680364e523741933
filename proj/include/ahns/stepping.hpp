#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "ahns/dissipation.hpp"
#include "ahns/fft.hpp"
#include "ahns/field.hpp"
#include "ahns/grid.hpp"
#include "ahns/nonlinear.hpp"
#include "ahns/spectral_ops.hpp"

namespace ahns {

enum class Integrator { etd1, etdrk2, imex_cn };

inline const char* integrator_name(Integrator k) {
  switch (k) {
    case Integrator::etd1: return "etd1";
    case Integrator::etdrk2: return "etdrk2";
    case Integrator::imex_cn: return "imex_cn";
  }
  return "?";
}

inline Integrator parse_integrator(const std::string& s) {
  if (s == "etd1") return Integrator::etd1;
  if (s == "etdrk2") return Integrator::etdrk2;
  if (s == "imex_cn") return Integrator::imex_cn;
  throw std::invalid_argument("unknown integrator '" + s +
                              "' (expected etd1, etdrk2, or imex_cn)");
}

struct SolverState {
  double t = 0.0;
  long long step_count = 0;
  SpectralVelocity u;
};

class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double t, long long step)
      : std::runtime_error(what), t(t), step(step) {}
  double t;
  long long step;
};

// phi1(z) = (e^z - 1)/z, phi2(z) = (e^z - 1 - z)/z^2, phi1(0) = 1,
// phi2(0) = 1/2.  Series near zero avoids the subtractive cancellation.
inline double phi1(double z) {
  if (std::abs(z) < 0.25) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 12; ++k) {
      term *= z / (k + 1);
      sum += term;
    }
    return sum;
  }
  return std::expm1(z) / z;
}

inline double phi2(double z) {
  if (std::abs(z) < 0.25) {
    double term = 0.5, sum = 0.5;
    for (int k = 1; k <= 12; ++k) {
      term *= z / (k + 2);
      sum += term;
    }
    return sum;
  }
  return (std::expm1(z) - z) / (z * z);
}

// Apply a scalar function of dt * G per mode, where G is the linear generator
// restricted to the divergence-free plane of the mode:
//   G = -P diag(D1, D2, D3) = -(D1 I + (D3 - D1) w w^T),  w = P e3.
// Because D1 = D2, G is symmetric on the plane with eigenvalues -D1 (across w)
// and -(D1 + (D3 - D1) rho) along w, rho = |w|^2 = (xi_1^2 + xi_2^2)/|xi|^2.
// So f(dt G) u = f(-dt D1) u + [f(-dt (D1 + c rho)) - f(-dt D1)] (u3/rho) w.
// Divergence-free input stays divergence-free (w is orthogonal to xi), and
// for D1 = D3 or single-component shear data this reduces to the plain
// per-mode factor f(-dt D_j).
template <class F>
SpectralVelocity apply_symbol_function(const WavenumberLattice& lat,
                                       const DissipationSymbol& sym, double dt,
                                       const SpectralVelocity& u, F&& f) {
  require_same_grid(u.grid(), lat.grid, "apply_symbol_function");
  const GridSpec& g = lat.grid;
  SpectralVelocity out = SpectralVelocity::zeros(g);
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i3 = 0; i3 < g.nk3(); ++i3) {
        const std::size_t m = lat.index(i1, i2, i3);
        const double d1 = sym.d1[m];
        const double fa = f(-dt * d1);
        const double q = lat.xi_sq[m];
        const double x1 = lat.xi1[i1], x2 = lat.xi2[i2], x3 = lat.xi3[i3];
        const double rho = q == 0.0 ? 0.0 : (x1 * x1 + x2 * x2) / q;
        out.c[0].v[m] = fa * u.c[0].v[m];
        out.c[1].v[m] = fa * u.c[1].v[m];
        out.c[2].v[m] = fa * u.c[2].v[m];
        if (rho > 0.0) {
          const double c = sym.d3[m] - d1;
          if (c != 0.0) {
            const double fb = f(-dt * (d1 + c * rho));
            const cplx coef = (fb - fa) * (u.c[2].v[m] / rho);
            const double inv_q = 1.0 / q;
            out.c[0].v[m] += coef * (-x1 * x3 * inv_q);
            out.c[1].v[m] += coef * (-x2 * x3 * inv_q);
            out.c[2].v[m] += coef * (1.0 - x3 * x3 * inv_q);
          }
        }
      }
  return out;
}

namespace detail {

inline void axpy(SpectralVelocity& y, double a, const SpectralVelocity& x) {
  for (int j = 0; j < 3; ++j)
    for (std::size_t m = 0; m < y.c[j].v.size(); ++m) y.c[j].v[m] += a * x.c[j].v[m];
}

inline SpectralVelocity combine(double a, const SpectralVelocity& x, double b,
                                const SpectralVelocity& y) {
  SpectralVelocity out = SpectralVelocity::zeros(x.grid());
  for (int j = 0; j < 3; ++j)
    for (std::size_t m = 0; m < out.c[j].v.size(); ++m)
      out.c[j].v[m] = a * x.c[j].v[m] + b * y.c[j].v[m];
  return out;
}

inline bool all_finite(const SpectralVelocity& u) {
  for (const auto& comp : u.c)
    for (const auto& z : comp.v)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace detail

// One-step time integrators sharing the exact per-mode linear propagator:
//   etd1    u' = E u + dt phi1 N(u)                (exponential Euler)
//   etdrk2  a  = E u + dt phi1 N(u),
//           u' = a + dt phi2 (N(a) - N(u))         (2nd order exponential RK)
//   imex_cn trapezoid on the linear part, 2-step Adams-Bashforth on N
// with E = exp(dt G), phi_k = phi_k(dt G) applied mode-by-mode as above.
// When N vanishes along the trajectory every scheme reproduces the linear
// flow exactly, independent of dt.
class Stepper {
 public:
  Stepper(const WavenumberLattice& lat, Fft3& fft, DissipationSymbol symbol,
          Integrator kind, double dt, double grad_sq_ceiling = 1.0e12)
      : lat_(lat),
        fft_(fft),
        sym_(std::move(symbol)),
        kind_(kind),
        dt_(dt),
        ceiling_(grad_sq_ceiling) {
    if (!(dt > 0.0)) throw std::invalid_argument("Stepper: dt must be positive");
  }

  double dt() const { return dt_; }
  Integrator kind() const { return kind_; }

  // Previous nonlinear term, kept by imex_cn between steps.  Exposed so a
  // checkpoint can carry it and a resumed run replays the same trajectory.
  const std::optional<SpectralVelocity>& nonlinear_history() const { return nl_prev_; }
  void set_nonlinear_history(SpectralVelocity n) { nl_prev_ = std::move(n); }

  void step(SolverState& s) {
    const SpectralVelocity n0 = nonlinear_term(lat_, fft_, s.u);
    SpectralVelocity next = SpectralVelocity::zeros(lat_.grid);
    switch (kind_) {
      case Integrator::etd1: {
        next = apply_symbol_function(lat_, sym_, dt_, s.u, [](double z) { return std::exp(z); });
        const SpectralVelocity p1 = apply_symbol_function(lat_, sym_, dt_, n0, phi1);
        detail::axpy(next, dt_, p1);
        break;
      }
      case Integrator::etdrk2: {
        SpectralVelocity a =
            apply_symbol_function(lat_, sym_, dt_, s.u, [](double z) { return std::exp(z); });
        const SpectralVelocity p1 = apply_symbol_function(lat_, sym_, dt_, n0, phi1);
        detail::axpy(a, dt_, p1);
        const SpectralVelocity n1 = nonlinear_term(lat_, fft_, a);
        const SpectralVelocity diff = detail::combine(1.0, n1, -1.0, n0);
        const SpectralVelocity p2 = apply_symbol_function(lat_, sym_, dt_, diff, phi2);
        next = std::move(a);
        detail::axpy(next, dt_, p2);
        break;
      }
      case Integrator::imex_cn: {
        const SpectralVelocity& nm1 = nl_prev_ ? *nl_prev_ : n0;
        const SpectralVelocity nl = detail::combine(1.5, n0, -0.5, nm1);
        next = apply_symbol_function(lat_, sym_, dt_, s.u, [](double z) {
          return (1.0 + 0.5 * z) / (1.0 - 0.5 * z);
        });
        const SpectralVelocity lifted = apply_symbol_function(
            lat_, sym_, dt_, nl, [](double z) { return 1.0 / (1.0 - 0.5 * z); });
        detail::axpy(next, dt_, lifted);
        nl_prev_ = n0;
        break;
      }
    }
    s.u = std::move(next);
    s.step_count += 1;
    s.t = static_cast<double>(s.step_count) * dt_;
    if (!detail::all_finite(s.u))
      throw BlowUpError("non-finite coefficient at t = " + std::to_string(s.t), s.t,
                        s.step_count);
    const double gsq = grad_norm_sq(lat_, s.u);
    if (gsq > ceiling_)
      throw BlowUpError("||grad u||^2 = " + std::to_string(gsq) +
                            " exceeded ceiling at t = " + std::to_string(s.t),
                        s.t, s.step_count);
  }

 private:
  const WavenumberLattice& lat_;
  Fft3& fft_;
  DissipationSymbol sym_;
  Integrator kind_;
  double dt_;
  double ceiling_;
  std::optional<SpectralVelocity> nl_prev_;
};

}  // namespace ahns
