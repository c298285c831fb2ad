#pragma once

// Exact ground truth, independent of every semiclassical route: the number
// of bound states with angular parameter λ equals the number of nodes of
// the regular E = 0 solution of ℏ²Ψ'' = (λ² − W)Ψ (Sturm oscillation).

#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <utility>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "tren/errors.hpp"
#include "tren/log_well.hpp"

namespace tren {

struct StepStats {
  long steps = 0;
  long renormalizations = 0;
  bool tail_node = false;  // one node lies beyond the truncated window
};

struct NodeCount {
  int count = 0;
  std::pair<double, double> rho_span{0.0, 0.0};
  StepStats step_stats;
};

inline NodeCount count_bound_states(const LogWell& w, double lambda, const Settings& s) {
  if (!(lambda > 0)) throw InvalidInput("count_bound_states: lambda must be > 0");
  using State = std::array<double, 2>;
  namespace ode = boost::numeric::odeint;

  const double k = lambda / s.hbar;
  const double k2 = k * k;
  const double inv_h2 = 1.0 / (s.hbar * s.hbar);
  auto rhs = [&](const State& y, State& dy, double rho) {
    dy[0] = y[1];
    dy[1] = (k2 - w.W(rho) * inv_h2) * y[0];
  };

  const double lo = w.rho_min;
  const double hi = w.rho_max;
  const double max_dt = std::min(0.5 * s.hbar / std::sqrt(w.V_m + lambda * lambda), (hi - lo) / 64.0);
  auto stepper = ode::make_dense_output(s.ode_tol, s.ode_tol, max_dt, ode::runge_kutta_dopri5<State>());

  NodeCount out;
  out.rho_span = {lo, hi};
  State y{1.0, k};
  stepper.initialize(y, lo, 0.1 * max_dt);

  int sign = 1;
  auto track = [&](double psi) {
    if (psi == 0.0) return;
    const int sg = psi > 0 ? 1 : -1;
    if (sg != sign) {
      ++out.count;
      sign = sg;
    }
  };

  constexpr int dense_samples = 4;
  State end{1.0, k};
  while (true) {
    const auto [t0, t1] = stepper.do_step(rhs);
    ++out.step_stats.steps;
    const double t_stop = std::min(t1, hi);
    State probe;
    for (int j = 1; j <= dense_samples; ++j) {
      const double t = t0 + (t_stop - t0) * j / dense_samples;
      if (t == t1)
        probe = stepper.current_state();
      else
        stepper.calc_state(t, probe);
      track(probe[0]);
    }
    if (t1 >= hi) {
      end = probe;
      break;
    }
    State cur = stepper.current_state();
    const double mag = std::abs(cur[0]) + std::abs(cur[1]) / k;
    if (mag > 1e100 || (mag < 1e-100 && mag > 0)) {
      cur[0] /= mag;
      cur[1] /= mag;
      stepper.initialize(cur, stepper.current_time(), stepper.current_time_step());
      ++out.step_stats.renormalizations;
    }
    if (out.step_stats.steps > 50'000'000)
      throw ConvergenceError("count_bound_states: step limit exceeded", stepper.current_time());
  }

  // Beyond the window W ≈ 0 and Ψ = A e^{kρ} + B e^{-kρ}; a further node
  // exists exactly when the growing amplitude opposes the current sign.
  const double growing = end[0] + end[1] / k;
  if (end[0] != 0.0 && growing != 0.0 && (growing > 0) != (end[0] > 0)) {
    ++out.count;
    out.step_stats.tail_node = true;
  }
  return out;
}

/// Builds the well at coupling Z.
using WellFamily = std::function<LogWell(double)>;

/// Bisects the coupling at which the node count of the λ-wave steps from n
/// to n + 1, to 1e-8 relative width.
inline double exact_critical_coupling(const WellFamily& family, double lambda, int n,
                                      const Settings& s, double Z_guess = 1.0) {
  if (n < 0) throw InvalidInput("exact_critical_coupling: n must be >= 0");
  auto count = [&](double Z) { return count_bound_states(family(Z), lambda, s).count; };
  double lo = Z_guess;
  double hi = Z_guess;
  int doublings = 0;
  while (count(hi) <= n) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 60) throw ConvergenceError("exact_critical_coupling: upper bracket not found", hi);
  }
  doublings = 0;
  while (count(lo) > n) {
    hi = lo;
    lo *= 0.5;
    if (++doublings > 60) throw ConvergenceError("exact_critical_coupling: lower bracket not found", lo);
  }
  while (hi - lo > 1e-9 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (count(mid) <= n)
      lo = mid;
    else
      hi = mid;
  }
  const double Z = 0.5 * (lo + hi);
  const int below = count(Z * (1 - 1e-7));
  const int above = count(Z * (1 + 1e-7));
  if (below != n || above != n + 1) {
    std::ostringstream msg;
    msg << "exact_critical_coupling: node count not monotone near Z = " << Z << " (" << below
        << " below, " << above << " above, expected " << n << "/" << n + 1 << ")";
    throw ConvergenceError(msg.str(), Z);
  }
  return Z;
}

/// λ_n = a(s − n) > 0 with s(s + 1) = Z/(2a²), descending.
inline std::vector<double> lenz_analytic_spectrum(double a, double Z) {
  if (!(a > 0) || !(Z > 0)) throw InvalidInput("lenz_analytic_spectrum: a and Z must be > 0");
  const double sv = 0.5 * (-1.0 + std::sqrt(1.0 + 2.0 * Z / (a * a)));
  std::vector<double> out;
  for (int n = 0; a * (sv - n) > 0; ++n) out.push_back(a * (sv - n));
  return out;
}

}  // namespace tren
