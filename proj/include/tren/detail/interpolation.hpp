#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace tren::detail {

/// Chebyshev–Lobatto points mapped to [lo, hi], ascending, n + 1 points.
inline std::vector<double> chebyshev_lobatto(std::size_t n, double lo, double hi) {
  std::vector<double> x(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double c = std::cos(std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    x[k] = lo + 0.5 * (hi - lo) * (1.0 - c);
  }
  x.front() = lo;
  x.back() = hi;
  return x;
}

/// Barycentric interpolation through values sampled on chebyshev_lobatto().
inline double chebyshev_interpolate(std::span<const double> xs, std::span<const double> ys,
                                    double x) {
  const std::size_t n = xs.size();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double diff = x - xs[k];
    if (diff == 0.0) return ys[k];
    double w = (k % 2 == 0) ? 1.0 : -1.0;
    if (k == 0 || k + 1 == n) w *= 0.5;
    const double term = w / diff;
    num += term * ys[k];
    den += term;
  }
  return num / den;
}

/// Shape-preserving piecewise cubic Hermite interpolant (Fritsch–Carlson
/// slopes with the three-point endpoint rule).
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)), d_(x_.size(), 0.0) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("MonotoneCubic: need >= 2 matching points");
    for (std::size_t i = 1; i < n; ++i)
      if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("MonotoneCubic: abscissae must ascend");
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    if (n == 2) {
      d_[0] = d_[1] = delta[0];
      return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        d_[i] = 0.0;
      } else {
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    d_[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
    d_[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }

  double operator()(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    i = std::min(i, x_.size() - 2);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * d_[i] +
           (-2 * t3 + 3 * t2) * y_[i + 1] + (t3 - t2) * h * d_[i + 1];
  }

  double front_x() const { return x_.front(); }
  double back_x() const { return x_.back(); }
  double front_y() const { return y_.front(); }
  double back_y() const { return y_.back(); }
  std::span<const double> xs() const { return x_; }
  std::span<const double> ys() const { return y_; }

 private:
  static double edge_slope(double h0, double h1, double m0, double m1) {
    double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (d * m0 <= 0.0) {
      d = 0.0;
    } else if (m0 * m1 <= 0.0 && std::abs(d) > std::abs(3.0 * m0)) {
      d = 3.0 * m0;
    }
    return d;
  }

  std::vector<double> x_, y_, d_;
};

}  // namespace tren::detail
