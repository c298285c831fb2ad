#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <variant>
#include <vector>

#include "tren/action.hpp"
#include "tren/errors.hpp"
#include "tren/potential.hpp"

namespace tren {

/// t(λ) = φλ.
struct LinearT {
  double phi;
};

/// t(λ) read off a sampled action profile.
struct SampledT {
  const ActionProfile* profile;
};

using TSource = std::variant<LinearT, SampledT>;

struct EffectiveNumbers {
  double nu = 0.5;
  double lambda = 0.0;
  double phi = 0.0;
  double T = 0.0;
  double T_ren = 0.0;
  bool exact_t = false;
};

inline double t_effective(double nu, double lambda, const TSource& source) {
  if (!(nu >= 0.5)) throw InvalidInput("t_effective: nu must be >= 1/2");
  if (!(lambda >= 0)) throw InvalidInput("t_effective: lambda must be >= 0");
  if (const auto* lin = std::get_if<LinearT>(&source)) return nu + lin->phi * lambda;
  return nu + t_of(*std::get<SampledT>(source).profile, lambda);
}

inline double t_ren(double T) {
  if (!(T >= 0.5)) throw std::domain_error("t_ren: T must be >= 1/2");
  return std::sqrt(T * T - 0.25);
}

/// Leading terms of √(T² − 1/4) for large T.
inline double t_ren_expansion(double T) {
  if (T == 0) throw std::domain_error("t_ren_expansion: T must be nonzero");
  return T - 1.0 / (8.0 * T);
}

inline EffectiveNumbers effective_numbers(const QuantumNumbers& q, const TSource& source) {
  EffectiveNumbers e;
  e.nu = q.nu();
  e.lambda = q.lambda();
  e.T = t_effective(e.nu, e.lambda, source);
  e.T_ren = t_ren(e.T);
  if (const auto* lin = std::get_if<LinearT>(&source)) {
    e.phi = lin->phi;
  } else {
    e.exact_t = true;
    e.phi = e.lambda > 0 ? (e.T - e.nu) / e.lambda : 0.0;
  }
  return e;
}

struct LevelSpec {
  double nu;
  double lambda;
};

/// Ordering of two levels under the linear effective number. T and T_ren
/// orderings coincide; both are computed and must agree.
inline std::weak_ordering compare_order(LevelSpec a, LevelSpec b, double phi) {
  const double Ta = t_effective(a.nu, a.lambda, LinearT{phi});
  const double Tb = t_effective(b.nu, b.lambda, LinearT{phi});
  const auto by_T = Ta <=> Tb;
  const auto by_ren = t_ren(Ta) <=> t_ren(Tb);
  if (by_T != by_ren) throw std::logic_error("compare_order: T and T_ren orderings disagree");
  if (by_T == std::partial_ordering::less) return std::weak_ordering::less;
  if (by_T == std::partial_ordering::greater) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

struct OrderingRow {
  int n;
  int l;
  double nu;
  double lambda;
  double T;
  double T_ren;
};

/// All (n, l) with n ≤ n_max, l ≤ l_max sorted by T_ren; exact ties fall
/// back to (n, l).
inline std::vector<OrderingRow> ordering_table(int n_max, int l_max, int d, double phi) {
  if (n_max < 0 || l_max < 0) throw InvalidInput("ordering_table: n_max and l_max must be >= 0");
  std::vector<OrderingRow> rows;
  for (int n = 0; n <= n_max; ++n) {
    for (int l = 0; l <= l_max; ++l) {
      const QuantumNumbers q(n, l, d);
      const double T = t_effective(q.nu(), q.lambda(), LinearT{phi});
      rows.push_back({n, l, q.nu(), q.lambda(), T, t_ren(T)});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const OrderingRow& x, const OrderingRow& y) {
    if (x.T_ren != y.T_ren) return x.T_ren < y.T_ren;
    if (x.n != y.n) return x.n < y.n;
    return x.l < y.l;
  });
  return rows;
}

}  // namespace tren
