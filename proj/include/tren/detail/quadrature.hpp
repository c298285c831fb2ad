#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

namespace tren::detail {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// Newton iteration on the three-term Legendre recurrence. Converges to
// machine precision from the standard asymptotic initial guess.
inline GaussRule make_gauss_legendre(std::size_t n) {
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

template <std::size_t N>
const GaussRule& gauss_legendre() {
  static const GaussRule rule = make_gauss_legendre(N);
  return rule;
}

template <class F>
double fixed_gauss(const F& f, double a, double b, const GaussRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

/// Globally adaptive N-point Gauss–Legendre: the interval with the largest
/// error estimate is bisected until the summed estimate meets `abs_tol` or
/// `max_intervals` is reached. The estimate on an interval is the difference
/// between the rule on it and on its two halves, floored at a few ulps.
template <std::size_t N = 128, class F>
QuadratureResult adaptive_gauss(const F& f, double a, double b, double abs_tol,
                                std::size_t max_intervals = 256) {
  if (a == b) return {0.0, 0.0, true};
  const auto& rule = gauss_legendre<N>();
  struct Piece {
    double lo, hi, value, error;
  };
  const double eps = std::numeric_limits<double>::epsilon();
  auto split = [&](double lo, double hi, double whole, Piece& left, Piece& right) {
    const double mid = 0.5 * (lo + hi);
    const double l = fixed_gauss(f, lo, mid, rule);
    const double r = fixed_gauss(f, mid, hi, rule);
    const double err = std::max(std::abs(l + r - whole), 64.0 * eps * (std::abs(l) + std::abs(r)));
    left = {lo, mid, l, 0.5 * err};
    right = {mid, hi, r, 0.5 * err};
  };
  std::vector<Piece> pieces(2);
  split(a, b, fixed_gauss(f, a, b, rule), pieces[0], pieces[1]);
  while (true) {
    double value = 0.0;
    double error = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      value += pieces[i].value;
      error += pieces[i].error;
      if (pieces[i].error > pieces[worst].error) worst = i;
    }
    const double floor = 64.0 * eps * std::abs(value);
    if (error <= abs_tol || error <= floor) return {value, error, true};
    const Piece w = pieces[worst];
    const double mid = 0.5 * (w.lo + w.hi);
    if (pieces.size() >= max_intervals || !(mid > w.lo && mid < w.hi)) return {value, error, false};
    Piece left, right;
    split(w.lo, w.hi, w.value, left, right);
    pieces[worst] = left;
    pieces.push_back(right);
  }
}

}  // namespace tren::detail
