#pragma once

#include <cmath>
#include <optional>

namespace tren::detail {

/// Bisection on a bracket where `pred(lo)` is true and `pred(hi)` is false.
/// Returns the boundary point; stops at `x_tol` or when the midpoint no
/// longer separates the endpoints in floating point.
template <class Pred>
double bisect_boundary(const Pred& pred, double lo, double hi, double x_tol,
                       int max_iter = 400) {
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid != lo && mid != hi) || std::abs(hi - lo) <= x_tol) break;
    if (pred(mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Starting from `start` where f(start) > level, walks in `direction`
/// (+1 or -1) with doubling steps until f drops to or below `level`, then
/// bisects to machine precision. Empty when no crossing is found.
template <class F>
std::optional<double> find_crossing(const F& f, double level, double start,
                                    int direction, double initial_step,
                                    int max_doublings = 80) {
  double inside = start;
  double step = initial_step;
  for (int i = 0; i < max_doublings; ++i) {
    const double probe = start + direction * step;
    if (!std::isfinite(probe)) return std::nullopt;
    const double value = f(probe);
    if (value <= level) {
      return bisect_boundary([&](double x) { return f(x) > level; }, inside, probe, 0.0);
    }
    inside = probe;
    step *= 2.0;
  }
  return std::nullopt;
}

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <class F>
double golden_maximum(const F& f, double lo, double hi, double x_tol) {
  const double ratio = 0.6180339887498949;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (std::abs(hi - lo) > x_tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    }
    if (x1 >= x2) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace tren::detail
