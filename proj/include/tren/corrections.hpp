#pragma once

// Corrections to the half-integer quantization condition
//   Φ(ε) = n + 1/2 + δ,   Φ = I(λ) with ε = (V_m − λ²)/2,
// through the resummed defect δ = 2δ₁ / (1 + √(1 + 16δ₁²)).

#include <cmath>
#include <numbers>
#include <sstream>

#include "tren/action.hpp"
#include "tren/detail/roots.hpp"
#include "tren/errors.hpp"
#include "tren/log_well.hpp"

namespace tren {

enum class CorrectionSource { integral, matched };

struct CorrectionState {
  double delta1 = 0.0;
  double delta = 0.0;
  double Phi_m = 0.0;
  CorrectionSource source = CorrectionSource::matched;
};

inline double resum_delta(double delta1) {
  return 2.0 * delta1 / (1.0 + std::sqrt(1.0 + 16.0 * delta1 * delta1));
}

/// (√(1 + 16δ₁²) − 1) / (8δ₁): the same value, singular at δ₁ = 0.
inline double resum_delta_alternate(double delta1) {
  return (std::sqrt(1.0 + 16.0 * delta1 * delta1) - 1.0) / (8.0 * delta1);
}

/// δ₁ fixed by requiring the n = 0 level to sit exactly at the well top.
inline double delta1_matched(double Phi_m) {
  if (!(Phi_m > 0)) throw InvalidInput("delta1_matched: Phi_m must be > 0");
  return -1.0 / (8.0 * Phi_m);
}

inline CorrectionState matched_correction(double Phi_m) {
  const double d1 = delta1_matched(Phi_m);
  return {d1, resum_delta(d1), Phi_m, CorrectionSource::matched};
}

/// Critical Φ_m at which level n appears: √((n + 1/2)² − 1/4).
inline double ground_state_threshold(int n) {
  if (n < 0) throw InvalidInput("ground_state_threshold: n must be >= 0");
  const double v = n + 0.5;
  return std::sqrt(v * v - 0.25);
}

/// δ₁(ε) = (ℏ/24π) F''(ε), with F'' from a 5-point stencil and one
/// Richardson step, h halved until successive estimates agree.
inline double delta1_integral(const FormalWell& fw, double epsilon, const Settings& s) {
  const double top = fw.ceiling();
  double h = 1e-3 * (std::isfinite(fw.V_m) ? fw.V_m : epsilon);
  if (!(epsilon - 2 * h > 0) || !(epsilon + 2 * h < top)) {
    std::ostringstream msg;
    msg << "delta1_integral: stencil around epsilon = " << epsilon << " leaves (0, " << top << ")";
    throw std::domain_error(msg.str());
  }
  Settings tight = s;
  tight.quad_tol = std::min(s.quad_tol, 1e-14);
  auto F = [&](double e) { return correction_inner_integral(fw, e, tight); };
  const double f0 = F(epsilon);
  auto second = [&](double step) {
    return (-F(epsilon + 2 * step) + 16 * F(epsilon + step) - 30 * f0 + 16 * F(epsilon - step) -
            F(epsilon - 2 * step)) /
           (12 * step * step);
  };
  const double curvature_scale = std::abs(f0) / (epsilon * epsilon);
  double coarse = second(h);
  double prev = 0.0;
  bool have_prev = false;
  const double h_floor = 1e-7 * h;
  while (h > h_floor) {
    const double fine = second(0.5 * h);
    const double extrap = (16.0 * fine - coarse) / 15.0;
    if (have_prev && std::abs(extrap - prev) <= 1e-6 * std::max(std::abs(extrap), curvature_scale))
      return s.hbar / (24.0 * std::numbers::pi) * extrap;
    prev = extrap;
    have_prev = true;
    coarse = fine;
    h *= 0.5;
  }
  std::ostringstream msg;
  msg << "delta1_integral: Richardson extrapolation did not settle; last estimates " << prev
      << " and " << coarse;
  throw ConvergenceError(msg.str(), std::abs(prev - coarse));
}

/// Solves Φ(ε_n) = n + 1/2 + Φ_m − √(Φ_m² + 1/4) on the monotone action and
/// returns λ_n = √(V_m − 2ε_n).
inline double solve_spectrum(const LogWell& w, int n, const Settings& s) {
  if (n < 0) throw InvalidInput("solve_spectrum: n must be >= 0");
  const double phi_m = action(w, 0.0, s);
  if (phi_m < ground_state_threshold(n)) {
    std::ostringstream msg;
    msg << "no level n = " << n << ": Phi_m = " << phi_m << " < " << ground_state_threshold(n);
    throw NoSuchLevel(msg.str());
  }
  const double target = n + 0.5 + phi_m - std::sqrt(phi_m * phi_m + 0.25);
  if (target >= phi_m) return 0.0;
  const double lambda_max = std::sqrt(w.V_m);
  // I(λ) strictly decreases from Φ_m at 0 to 0 at √V_m.
  return detail::bisect_boundary([&](double lam) { return action(w, lam, s) > target; }, 0.0,
                                 lambda_max, 1e-15 * lambda_max);
}

}  // namespace tren
