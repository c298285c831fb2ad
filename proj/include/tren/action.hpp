#pragma once

// Action I(λ) = (1/πℏ)∫√(W − λ²)dρ between turning points, the deficit
// t(λ) = I(0) − I(λ), its least-squares slope, and the inner integral
// F(ε) = ∫(dV/dx)²/√(ε − V) dx of the first semiclassical correction.

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "tren/detail/interpolation.hpp"
#include "tren/detail/quadrature.hpp"
#include "tren/detail/roots.hpp"
#include "tren/errors.hpp"
#include "tren/log_well.hpp"

namespace tren {

struct TurningPair {
  double rho1 = 0.0;
  double rho2 = 0.0;
  bool degenerate = false;
};

namespace detail {

// λ² within this relative margin of V_m is the degenerate top of the well.
inline constexpr double top_margin = 1e-12;

inline double crossing_step(double lo, double hi) {
  return std::max(1e-6, 1e-3 * (hi - lo));
}

}  // namespace detail

inline TurningPair turning_points(const LogWell& w, double lambda2, const Settings& s) {
  (void)s;
  if (!(lambda2 >= 0)) throw InvalidInput("turning_points: lambda^2 must be >= 0");
  if (lambda2 > w.V_m * (1 + detail::top_margin)) {
    std::ostringstream msg;
    msg << "no classically allowed region: lambda^2 = " << lambda2 << " > V_m = " << w.V_m;
    throw NoAllowedRegion(msg.str());
  }
  if (lambda2 == 0) return {w.rho_min, w.rho_max, false};
  if (lambda2 >= w.V_m) return {w.rho_star, w.rho_star, true};
  const double step = detail::crossing_step(w.rho_min, w.rho_max);
  const auto left = detail::find_crossing(w.W, lambda2, w.rho_star, -1, step);
  const auto right = detail::find_crossing(w.W, lambda2, w.rho_star, +1, step);
  if (!left || !right) throw ConvergenceError("turning_points: crossing not bracketed", lambda2);
  return {*left, *right, false};
}

struct ActionValue {
  double value = 0.0;
  double error = 0.0;
};

/// I(λ) with its quadrature error estimate. The endpoint square-root
/// behaviour is removed by ρ = m + h·sin θ; at λ = 0 the truncated domain
/// is integrated directly and the analytic tails are added.
inline ActionValue action_with_error(const LogWell& w, double lambda, const Settings& s) {
  if (!(lambda >= 0)) throw InvalidInput("action: lambda must be >= 0");
  const double lambda2 = lambda * lambda;
  const auto tp = turning_points(w, lambda2, s);
  const double norm = 1.0 / (std::numbers::pi * s.hbar);
  if (tp.degenerate) return {0.0, 0.0};

  detail::QuadratureResult q;
  if (lambda2 == 0) {
    auto f = [&](double rho) { return std::sqrt(std::max(w.W(rho), 0.0)); };
    const double scale = std::sqrt(w.V_m) * (w.rho_max - w.rho_min);
    const double tol = s.quad_tol * std::numbers::pi * s.hbar * std::max(1.0, norm * scale);
    const auto left = detail::adaptive_gauss(f, w.rho_min, w.rho_star, 0.5 * tol);
    const auto right = detail::adaptive_gauss(f, w.rho_star, w.rho_max, 0.5 * tol);
    const double tails = w.sqrt_tail_left(w.rho_min) + w.sqrt_tail_right(w.rho_max);
    q.value = left.value + right.value + tails;
    q.error = left.error + right.error;
    q.converged = left.converged && right.converged;
  } else {
    const double mid = 0.5 * (tp.rho1 + tp.rho2);
    const double half = 0.5 * (tp.rho2 - tp.rho1);
    auto f = [&](double theta) {
      const double c = std::cos(theta);
      const double rho = mid + half * std::sin(theta);
      return std::sqrt(std::max(w.W(rho) - lambda2, 0.0)) * half * c;
    };
    const double lim = 0.5 * std::numbers::pi;
    const double first = detail::fixed_gauss(f, -lim, lim, detail::gauss_legendre<128>());
    const double tol = s.quad_tol * std::numbers::pi * s.hbar * std::max(1.0, norm * std::abs(first));
    q = detail::adaptive_gauss(f, -lim, lim, tol);
  }
  ActionValue out{norm * q.value, norm * q.error};
  if (!q.converged) {
    std::ostringstream msg;
    msg << "action quadrature did not converge at lambda = " << lambda << " (error " << out.error << ")";
    throw ConvergenceError(msg.str(), out.error);
  }
  return out;
}

inline double action(const LogWell& w, double lambda, const Settings& s) {
  return action_with_error(w, lambda, s).value;
}

/// I(λ) sampled on Chebyshev–Lobatto points of [0, √V_m].
struct ActionProfile {
  std::vector<double> lambda_grid;
  std::vector<double> I_values;
  std::vector<double> quad_error;
  double Phi_m = 0.0;
  double lambda_max = 0.0;

  double t_at(std::size_t i) const { return Phi_m - I_values[i]; }
};

inline constexpr std::size_t profile_intervals = 64;

inline ActionProfile action_profile(const LogWell& w, const Settings& s) {
  ActionProfile p;
  p.lambda_max = std::sqrt(w.V_m);
  p.lambda_grid = detail::chebyshev_lobatto(profile_intervals, 0.0, p.lambda_max);
  p.I_values.resize(p.lambda_grid.size());
  p.quad_error.resize(p.lambda_grid.size());
  for (std::size_t i = 0; i < p.lambda_grid.size(); ++i) {
    const auto v = action_with_error(w, p.lambda_grid[i], s);
    p.I_values[i] = v.value;
    p.quad_error[i] = v.error;
  }
  p.I_values.back() = 0.0;
  p.Phi_m = p.I_values.front();
  return p;
}

inline double t_of(const ActionProfile& p, double lambda) {
  const double slack = 1e-12 * p.lambda_max;
  if (!(lambda >= -slack) || !(lambda <= p.lambda_max + slack)) {
    std::ostringstream msg;
    msg << "t(lambda): lambda = " << lambda << " outside [0, " << p.lambda_max << "]";
    throw InvalidInput(msg.str());
  }
  if (lambda <= 0) return 0.0;
  if (lambda >= p.lambda_max) return p.Phi_m;
  return p.Phi_m - detail::chebyshev_interpolate(p.lambda_grid, p.I_values, lambda);
}

/// Least-squares slope of t(λ) ≈ φλ over [0, √V_m]:
/// φ = ∫λ t dλ / ∫λ² dλ, both by 64-node Gauss–Legendre.
inline double fit_phi(const ActionProfile& p) {
  if (!(p.lambda_max > 0) || p.lambda_grid.size() < 2)
    throw InvalidInput("fit_phi: degenerate action profile");
  const auto& rule = detail::gauss_legendre<64>();
  const double num = detail::fixed_gauss([&](double x) { return x * t_of(p, x); }, 0.0, p.lambda_max, rule);
  const double den = detail::fixed_gauss([](double x) { return x * x; }, 0.0, p.lambda_max, rule);
  return num / den;
}

namespace detail {

inline TurningPair formal_turning_points(const FormalWell& fw, double epsilon) {
  auto neg_v = [&](double x) { return -fw.V(x); };
  const double span = std::isfinite(fw.x_hi - fw.x_lo) ? fw.x_hi - fw.x_lo : 1.0;
  const double step = std::max(1e-6, 1e-3 * span);
  const auto left = find_crossing(neg_v, -epsilon, fw.x_min, -1, step);
  const auto right = find_crossing(neg_v, -epsilon, fw.x_min, +1, step);
  if (!left || !right) throw ConvergenceError("formal well: turning points not bracketed", epsilon);
  return {*left, *right, false};
}

}  // namespace detail

namespace detail {

enum class InnerForm { by_parts, direct };

inline double inner_integral(const FormalWell& fw, double epsilon, const Settings& s, InnerForm form) {
  if (epsilon == 0) return 0.0;
  if (!(epsilon > 0)) throw InvalidInput("correction_inner_integral: epsilon must be >= 0");
  const double top = fw.ceiling();
  if (epsilon > top * (1 + top_margin)) {
    std::ostringstream msg;
    msg << "correction_inner_integral: epsilon = " << epsilon << " above V_m/2 = " << top;
    throw InvalidInput(msg.str());
  }
  // direct:   (V')² / √(ε − V)
  // by parts: 2 V'' √(ε − V)   (boundary terms vanish at the turning points)
  auto integrand = [&](double x) {
    const double g = epsilon - fw.V(x);
    if (!(g > 0)) return 0.0;
    if (form == InnerForm::by_parts) return 2.0 * fw.d2V(x) * std::sqrt(g);
    const double d = fw.dV(x);
    return d * d / std::sqrt(g);
  };
  QuadratureResult q;
  if (epsilon >= top) {
    const double first = fixed_gauss(integrand, fw.x_lo, fw.x_hi, gauss_legendre<128>());
    q = adaptive_gauss(integrand, fw.x_lo, fw.x_hi, s.quad_tol * std::max(1.0, std::abs(first)));
  } else {
    const auto tp = formal_turning_points(fw, epsilon);
    const double mid = 0.5 * (tp.rho1 + tp.rho2);
    const double half = 0.5 * (tp.rho2 - tp.rho1);
    auto f = [&](double theta) {
      return integrand(mid + half * std::sin(theta)) * half * std::cos(theta);
    };
    const double lim = 0.5 * std::numbers::pi;
    const double first = fixed_gauss(f, -lim, lim, gauss_legendre<128>());
    q = adaptive_gauss(f, -lim, lim, s.quad_tol * std::max(1.0, std::abs(first)));
  }
  if (!q.converged)
    throw ConvergenceError("correction_inner_integral: quadrature did not converge", q.error);
  return q.value;
}

}  // namespace detail

/// F(ε) = ∫ (dV/dx)² / √(ε − V) dx over {V < ε}, evaluated as the
/// equivalent 2∫ V''√(ε − V) dx, whose integrand vanishes at the turning
/// points and is insensitive to their last-ulp placement.
inline double correction_inner_integral(const FormalWell& fw, double epsilon, const Settings& s) {
  const auto form = fw.d2V ? detail::InnerForm::by_parts : detail::InnerForm::direct;
  return detail::inner_integral(fw, epsilon, s, form);
}

/// The same F(ε) from the (V')²/√(ε − V) integrand; accurate to ~1e-11.
inline double correction_inner_integral_direct(const FormalWell& fw, double epsilon, const Settings& s) {
  return detail::inner_integral(fw, epsilon, s, detail::InnerForm::direct);
}

}  // namespace tren
