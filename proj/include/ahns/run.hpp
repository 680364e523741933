#pragma once

#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ahns/diagnostics.hpp"
#include "ahns/dissipation.hpp"
#include "ahns/fft.hpp"
#include "ahns/grid.hpp"
#include "ahns/initial.hpp"
#include "ahns/stepping.hpp"

namespace ahns {

struct RunConfig {
  GridSpec grid;
  MultiplierIndices indices;
  double dt = 1.0e-3;
  double t_end = 1.0;
  Integrator integrator = Integrator::etdrk2;
  InitialCondition initial;
  int diagnostics_every = 10;
  double sobolev_order_s = 2.0;
  double grad_sq_ceiling = 1.0e12;

  void validate() const {
    grid.validate();
    indices.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("RunConfig: dt must be positive");
    if (!(t_end >= 0.0)) throw std::invalid_argument("RunConfig: t_end must be >= 0");
    if (diagnostics_every < 1)
      throw std::invalid_argument("RunConfig: diagnostics_every must be >= 1");
    if (!(sobolev_order_s >= 0.0))
      throw std::invalid_argument("RunConfig: sobolev_order_s must be >= 0");
    if (!(grad_sq_ceiling > 0.0))
      throw std::invalid_argument("RunConfig: grad_sq_ceiling must be positive");
  }

  long long total_steps() const {
    const long long n = std::llround(t_end / dt);
    return n < 0 ? 0 : n;
  }
};

enum class Termination { completed, blow_up_indicator, error };

inline const char* termination_name(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::blow_up_indicator: return "blow_up_indicator";
    case Termination::error: return "error";
  }
  return "?";
}

struct RunResult {
  Termination termination = Termination::completed;
  std::string message;
  SolverState final_state;
};

// Rolling window of the most recent reports; balance_residual for a new row
// is computed over the trailing (up to) three reports.  A checkpoint stores
// the window so a resumed run reproduces the same residual column.
struct ReportWindow {
  std::deque<EnergyReport> recent;

  void push(const EnergyReport& r) {
    recent.push_back(r);
    while (recent.size() > 3) recent.pop_front();
  }
  double residual() const {
    std::vector<EnergyReport> w(recent.begin(), recent.end());
    return balance_residual(std::span<const EnergyReport>(w.data(), w.size()));
  }
};

using ReportObserver = std::function<void(const SolverState&, const EnergyReport&)>;

namespace detail {

inline void warn_cfl(const WavenumberLattice& lat, Fft3& fft, const SpectralVelocity& u,
                     double dt, bool& warned) {
  if (warned) return;
  double umax = 0.0;
  for (int j = 0; j < 3; ++j) {
    const ScalarField f = fft.from_spectral(u.c[j]);
    for (double x : f.v) umax = std::max(umax, std::abs(x));
  }
  const double ximax = kPi * std::max({lat.grid.n1, lat.grid.n2, lat.grid.n3}) /
                       lat.grid.box_length;
  const double cfl = dt * umax * ximax;
  if (cfl > 0.5) {
    std::fprintf(stderr,
                 "warning: advective CFL estimate dt*max|u|*max|xi| = %.3g exceeds 0.5; "
                 "the nonlinear term may be under-resolved in time\n",
                 cfl);
    warned = true;
  }
}

}  // namespace detail

// March `state` to config.t_end, emitting an EnergyReport every
// diagnostics_every steps and at the final step.  Steps are counted globally
// (t = step_count * dt), so a run split at a checkpoint and resumed walks the
// byte-identical trajectory of the unsplit run.
inline RunResult run_from(const WavenumberLattice& lat, Fft3& fft, const RunConfig& config,
                          SolverState state, const ReportObserver& observe,
                          bool emit_initial = true, ReportWindow window = {},
                          Stepper* external_stepper = nullptr) {
  config.validate();
  DissipationSymbol sym = dissipation_symbol(config.indices, lat);
  Stepper own_stepper(lat, fft, std::move(sym), config.integrator, config.dt,
                      config.grad_sq_ceiling);
  Stepper& stepper = external_stepper ? *external_stepper : own_stepper;

  const long long n_total = config.total_steps();
  bool cfl_warned = false;

  auto emit = [&](const SolverState& s) {
    EnergyReport r =
        make_energy_report(lat, fft, s.u, config.indices, config.sobolev_order_s, s.t);
    window.push(r);
    r.balance_residual = window.residual();
    window.recent.back().balance_residual = r.balance_residual;
    if (observe) observe(s, r);
  };

  RunResult result;
  try {
    detail::warn_cfl(lat, fft, state.u, config.dt, cfl_warned);
    if (emit_initial) emit(state);
    while (state.step_count < n_total) {
      stepper.step(state);
      if (state.step_count % config.diagnostics_every == 0 || state.step_count == n_total)
        emit(state);
    }
    result.termination = Termination::completed;
  } catch (const BlowUpError& e) {
    result.termination = Termination::blow_up_indicator;
    result.message = e.what();
  }
  result.final_state = std::move(state);
  return result;
}

inline RunResult run(const RunConfig& config, const ReportObserver& observe) {
  config.validate();
  const WavenumberLattice lat = build_lattice(config.grid);
  Fft3 fft(config.grid);
  SolverState state;
  state.u = make_initial(config.initial, lat, fft);
  return run_from(lat, fft, config, std::move(state), observe);
}

// Convenience for tests and small grids: collect the full report trajectory.
inline std::pair<RunResult, std::vector<EnergyReport>> run_collect(const RunConfig& config) {
  std::vector<EnergyReport> reports;
  RunResult res = run(config, [&](const SolverState&, const EnergyReport& r) {
    reports.push_back(r);
  });
  return {std::move(res), std::move(reports)};
}

}  // namespace ahns
