#pragma once

// The zero-energy radial problem on ρ = ln r:
//   ℏ²Ψ'' + [W(ρ) − λ²]Ψ = 0,   W(ρ) = −2 e^{2ρ} U(e^ρ) ≥ 0,
// and the equivalent "formal" one-dimensional problem with
//   V(ρ) = (V_m − W(ρ))/2,   ε(λ) = (V_m − λ²)/2.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "tren/detail/quadrature.hpp"
#include "tren/detail/roots.hpp"
#include "tren/errors.hpp"
#include "tren/potential.hpp"

namespace tren {

/// Which power of r multiplies U in the transformed well. `squared_radius`
/// is the dimensionally consistent −2r²U; `linear_radius` (−2rU) exists
/// only so the validation harness can show that it fails.
enum class LogTransform { squared_radius, linear_radius };

/// W = Z·w exactly.
struct CouplingScale {
  double Z = 1.0;
  std::function<double(double)> base;
};

struct LogWell {
  std::function<double(double)> W;
  std::function<double(double)> dW;
  std::function<double(double)> d2W;
  double V_m = 0.0;
  double rho_star = 0.0;
  /// Truncated domain: W < domain_cut·V_m outside [rho_min, rho_max].
  double rho_min = 0.0;
  double rho_max = 0.0;
  std::optional<CouplingScale> scaling;
  /// ∫_{-∞}^{ρ} √W and ∫_{ρ}^{∞} √W for ρ outside the truncated domain.
  std::function<double(double)> sqrt_tail_left;
  std::function<double(double)> sqrt_tail_right;
  /// Window in which the maximum is searched.
  double scan_lo = -50.0;
  double scan_hi = 50.0;

  double operator()(double rho) const { return W(rho); }
};

struct WellPeak {
  double V_m;
  double rho_star;
};

/// Grid scan of the scan window followed by golden-section refinement
/// around the best sample.
inline WellPeak well_max(const LogWell& w, const Settings& s) {
  constexpr int samples = 4001;
  const double step = (w.scan_hi - w.scan_lo) / (samples - 1);
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double v = w.W(w.scan_lo + i * step);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  if (!(best_val > s.domain_cut) || !std::isfinite(best_val))
    throw InvalidInput("degenerate well: W(rho) <= domain_cut throughout the scan window");
  const double lo = w.scan_lo + std::max(best - 1, 0) * step;
  const double hi = w.scan_lo + std::min(best + 1, samples - 1) * step;
  double rho = detail::golden_maximum(w.W, lo, hi, 1e-12 * std::max(1.0, std::abs(lo)));
  double val = w.W(rho);
  if (best_val > val) {
    rho = w.scan_lo + best * step;
    val = best_val;
  }
  return {val, rho};
}

namespace detail {

// ∫ √W beyond `rho` assuming W ≈ C e^{-k|ρ|}, slope taken at `rho`.
inline double exponential_tail(const std::function<double(double)>& W, double rho,
                               int direction) {
  const double h = 1e-3;
  const double w0 = W(rho);
  if (!(w0 > 0)) return 0.0;
  const double wp = W(rho + h);
  const double wm = W(rho - h);
  if (!(wp > 0) || !(wm > 0)) return 0.0;
  const double slope = (std::log(wp) - std::log(wm)) / (2 * h);
  const double k = -direction * slope;
  if (!(k > 0)) return std::numeric_limits<double>::infinity();
  return 2.0 * std::sqrt(w0) / k;
}

inline std::function<double(double)> centered_derivative(std::function<double(double)> f) {
  return [f = std::move(f)](double x) {
    const double h = 1e-5 * std::max(1.0, std::abs(x));
    return (f(x + h) - f(x - h)) / (2 * h);
  };
}

inline std::function<double(double)> centered_second_derivative(std::function<double(double)> f) {
  return [f = std::move(f)](double x) {
    const double h = 1e-4 * std::max(1.0, std::abs(x));
    return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
  };
}

}  // namespace detail

/// Completes a LogWell from its profile: maximum, truncated domain, and the
/// default exponential tail model when none is supplied.
inline LogWell finish_log_well(LogWell w, const Settings& s) {
  s.validate();
  if (!w.dW) w.dW = detail::centered_derivative(w.W);
  if (!w.d2W) w.d2W = detail::centered_second_derivative(w.W);
  const auto peak = well_max(w, s);
  w.V_m = peak.V_m;
  w.rho_star = peak.rho_star;
  const double level = s.domain_cut * w.V_m;
  const double step = 0.25 * std::max(1e-3, (w.scan_hi - w.scan_lo) / 400.0);
  const auto left = detail::find_crossing(w.W, level, w.rho_star, -1, step);
  const auto right = detail::find_crossing(w.W, level, w.rho_star, +1, step);
  if (!left) throw ConditionViolation("well does not vanish as rho -> -inf (r^2 U does not vanish at r -> 0)");
  if (!right) throw ConditionViolation("well does not vanish as rho -> +inf (r^2 U does not vanish at r -> inf)");
  w.rho_min = *left;
  w.rho_max = *right;
  if (!w.sqrt_tail_left)
    w.sqrt_tail_left = [W = w.W](double rho) { return detail::exponential_tail(W, rho, -1); };
  if (!w.sqrt_tail_right)
    w.sqrt_tail_right = [W = w.W](double rho) { return detail::exponential_tail(W, rho, +1); };
  return w;
}

namespace detail {

inline LogWell lenz_log_well(double a, double Z) {
  LogWell w;
  w.W = [a, Z](double rho) { return lenz_well(a, Z, rho); };
  w.dW = [a, Z](double rho) { return -2.0 * a * lenz_well(a, Z, rho) * std::tanh(a * rho); };
  w.d2W = [a, Z](double rho) {
    const double th = std::tanh(a * rho);
    return 2.0 * a * a * lenz_well(a, Z, rho) * (3.0 * th * th - 1.0);
  };
  w.scaling = CouplingScale{Z, [a](double rho) { return lenz_well(a, 1.0, rho); }};
  // √W = √(Z/2) sech(aρ); ∫_x^∞ sech(at) dt = (2/a) atan(e^{-ax}).
  const double amp = std::sqrt(0.5 * Z) * 2.0 / a;
  w.sqrt_tail_left = [a, amp](double rho) { return amp * std::atan(std::exp(a * rho)); };
  w.sqrt_tail_right = [a, amp](double rho) { return amp * std::atan(std::exp(-a * rho)); };
  w.scan_lo = -40.0 / a;
  w.scan_hi = 40.0 / a;
  return w;
}

inline LogWell tabulated_log_well(const Tabulated& tab) {
  LogWell w;
  w.W = [tab](double rho) { return tab.well(rho); };
  w.dW = centered_derivative(w.W);
  w.d2W = centered_second_derivative(w.W);
  w.scaling = CouplingScale{1.0, w.W};
  // Exact for the power-law continuation; the in-grid piece is integrated.
  w.sqrt_tail_left = [tab](double rho) {
    const double k = 2.0 - tab.q0();
    const double front = tab.rho_front();
    if (rho <= front) return 2.0 * std::sqrt(tab.well(rho)) / k;
    const auto inner = adaptive_gauss<64>([&](double x) { return std::sqrt(tab.well(x)); }, front, rho, 1e-15);
    return 2.0 * std::sqrt(tab.well(front)) / k + inner.value;
  };
  w.sqrt_tail_right = [tab](double rho) {
    const double k = tab.qinf() - 2.0;
    const double back = tab.rho_back();
    if (rho >= back) return 2.0 * std::sqrt(tab.well(rho)) / k;
    const auto inner = adaptive_gauss<64>([&](double x) { return std::sqrt(tab.well(x)); }, rho, back, 1e-15);
    return 2.0 * std::sqrt(tab.well(back)) / k + inner.value;
  };
  const double span = tab.rho_back() - tab.rho_front();
  w.scan_lo = tab.rho_front() - 0.05 * span;
  w.scan_hi = tab.rho_back() + 0.05 * span;
  return w;
}

inline LogWell linear_radius_log_well(const RadialPotential& p) {
  LogWell w;
  const double Z = coupling_of(p);
  w.W = [p](double rho) { return -2.0 * std::exp(rho) * potential_value(p, std::exp(rho)); };
  w.scaling = CouplingScale{Z, [W = w.W, Z](double rho) { return W(rho) / Z; }};
  if (const auto* l = std::get_if<Lenz>(&p)) {
    w.scan_lo = -40.0 / l->a;
    w.scan_hi = 40.0 / l->a;
  } else if (std::holds_alternative<Tietz>(p)) {
    w.scan_lo = -80.0;
    w.scan_hi = 80.0;
  } else {
    const auto& tab = std::get<Tabulated>(p);
    w.scan_lo = tab.rho_front();
    w.scan_hi = tab.rho_back();
  }
  return w;
}

}  // namespace detail

/// Builds W(ρ) for a potential. Rejects potentials that violate r²U → 0,
/// naming the failing limit.
inline LogWell to_log_well(const RadialPotential& p, const Settings& s,
                           LogTransform transform = LogTransform::squared_radius) {
  const auto rep = check_conditions(p);
  if (!rep.ok()) throw ConditionViolation(rep.detail);
  if (transform == LogTransform::linear_radius)
    return finish_log_well(detail::linear_radius_log_well(p), s);
  if (const auto* l = std::get_if<Lenz>(&p)) return finish_log_well(detail::lenz_log_well(l->a, l->Z), s);
  if (const auto* t = std::get_if<Tietz>(&p)) return finish_log_well(detail::lenz_log_well(0.5, t->Z), s);
  return finish_log_well(detail::tabulated_log_well(std::get<Tabulated>(p)), s);
}

/// V(x) = (V_m − W(x))/2 on the same coordinate. `V_m` may be +∞ for test
/// wells that grow without bound; then x_lo/x_hi are ±∞ as well.
struct FormalWell {
  std::function<double(double)> V;
  std::function<double(double)> dV;
  std::function<double(double)> d2V;
  double x_min = 0.0;
  double V_m = std::numeric_limits<double>::infinity();
  double x_lo = -std::numeric_limits<double>::infinity();
  double x_hi = std::numeric_limits<double>::infinity();

  double ceiling() const { return 0.5 * V_m; }
  double epsilon_of(double lambda) const { return 0.5 * (V_m - lambda * lambda); }
};

inline FormalWell formal_well(const LogWell& w) {
  FormalWell fw;
  const double vm = w.V_m;
  fw.V = [W = w.W, vm](double x) { return 0.5 * (vm - W(x)); };
  fw.dV = [dW = w.dW](double x) { return -0.5 * dW(x); };
  fw.d2V = [d2W = w.d2W](double x) { return -0.5 * d2W(x); };
  fw.x_min = w.rho_star;
  fw.V_m = vm;
  fw.x_lo = w.rho_min;
  fw.x_hi = w.rho_max;
  return fw;
}

}  // namespace tren
