#pragma once

// Critical coupling at which level (n, l) appears at E = 0:
//   (1/πℏ)∫√W dρ = T_ren(ν, λ) = √(T² − 1/4)   (renormalized)
//   (1/πℏ)∫√W dρ = T(ν, λ)                      (bare)

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <sstream>
#include <vector>

#include "tren/action.hpp"
#include "tren/effective_number.hpp"
#include "tren/log_well.hpp"
#include "tren/oracle.hpp"
#include "tren/potential.hpp"

namespace tren {

enum class Target { bare, renormalized };

/// A well parameterized by its overall depth, with a cached reference
/// member at the coupling the potential was specified with.
class CouplingFamily {
 public:
  CouplingFamily(WellFamily make, double reference_coupling)
      : make_(std::move(make)),
        Z_ref_(reference_coupling),
        reference_(std::make_shared<const LogWell>(make_(Z_ref_))) {}

  static CouplingFamily from_potential(const RadialPotential& p, const Settings& s,
                                       LogTransform transform = LogTransform::squared_radius) {
    return CouplingFamily(
        [p, s, transform](double Z) { return to_log_well(with_coupling(p, Z), s, transform); },
        coupling_of(p));
  }

  LogWell at(double Z) const { return make_(Z); }
  const LogWell& reference() const { return *reference_; }
  double reference_coupling() const { return Z_ref_; }
  const WellFamily& maker() const { return make_; }

 private:
  WellFamily make_;
  double Z_ref_;
  std::shared_ptr<const LogWell> reference_;
};

namespace detail {

// Sign(h) by bisection on Z for an increasing h, with ×2 bracket expansion.
template <class H>
double coupling_root(const H& h, double Z0, const char* what) {
  double lo = Z0;
  double hi = Z0;
  int doublings = 0;
  while (h(hi) < 0) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 60) throw ConvergenceError(std::string(what) + ": target unreachable", hi);
  }
  doublings = 0;
  while (h(lo) > 0) {
    hi = lo;
    lo *= 0.5;
    if (++doublings > 60)
      throw ConvergenceError(std::string(what) + ": non-monotone coupling dependence", lo);
  }
  return bisect_boundary([&](double Z) { return h(Z) < 0; }, lo, hi, 1e-14 * hi);
}

inline double safe_action(const LogWell& w, double lambda, const Settings& s) {
  if (lambda * lambda >= w.V_m) return 0.0;
  return action(w, lambda, s);
}

}  // namespace detail

/// Coupling at which Φ_m equals `target_value`. Closed form Z_ref·(c/Φ_m)²
/// when W = Z·w; bisection on Z otherwise.
inline double coupling_for_phi_m(const CouplingFamily& family, double target_value, const Settings& s) {
  const auto& ref = family.reference();
  if (ref.scaling) {
    const double phi_ref = action(ref, 0.0, s);
    const double ratio = target_value / phi_ref;
    return family.reference_coupling() * ratio * ratio;
  }
  return detail::coupling_root(
      [&](double Z) { return action(family.at(Z), 0.0, s) - target_value; },
      family.reference_coupling(), "critical_coupling");
}

/// `phi` set: linear t(λ) = φλ. `phi` empty: exact t(λ) = Φ_m − I(λ)
/// recomputed at every trial coupling.
inline double critical_coupling(const CouplingFamily& family, const QuantumNumbers& q, Target target,
                                std::optional<double> phi, const Settings& s) {
  const double nu = q.nu();
  const double lambda = q.lambda();
  if (phi) {
    const double T = t_effective(nu, lambda, LinearT{*phi});
    return coupling_for_phi_m(family, target == Target::renormalized ? t_ren(T) : T, s);
  }
  // h(Z) = T⁻¹(Φ_m) − ν − t(λ), T⁻¹ the inverse of the chosen target map.
  auto h = [&](double Z) {
    const auto w = family.at(Z);
    const double phi_m = action(w, 0.0, s);
    const double I = detail::safe_action(w, lambda, s);
    const double lhs = target == Target::renormalized ? std::sqrt(phi_m * phi_m + 0.25) : phi_m;
    return lhs - (phi_m - I) - nu;
  };
  return detail::coupling_root(h, family.reference_coupling(), "critical_coupling");
}

struct LenzThreshold {
  double Z_corrected;
  double Z_as_printed;
};

/// Closed-form Lenz thresholds: 2a²[(ν + λ/a)² − 1/4] and the literal
/// 2a[(ν + λ/a)² − 1/4]^{1/2}, kept side by side.
inline LenzThreshold lenz_exact_threshold(double a, const QuantumNumbers& q) {
  if (!(a > 0)) throw InvalidInput("lenz_exact_threshold: a must be > 0");
  const double x = q.nu() + q.lambda() / a;
  if (x < 0.5) throw InvalidInput("lenz_exact_threshold: nu + lambda/a < 1/2");
  const double inner = x * x - 0.25;
  return {2.0 * a * a * inner, 2.0 * a * std::sqrt(inner)};
}

struct ThresholdReport {
  QuantumNumbers state;
  double T = 0.0;
  double T_ren = 0.0;
  double Z_pred_ren = 0.0;
  double Z_pred_unren = 0.0;
  std::optional<double> Z_exact;
  std::optional<double> rel_err_ren;
  std::optional<double> rel_err_unren;
};

struct ThresholdOptions {
  /// Empty: fit φ on the reference well.
  std::optional<double> phi;
  /// Use the sampled t(λ) rather than φλ.
  bool exact_t = false;
  bool with_oracle = false;
  /// Family used for the oracle; defaults to the prediction family.
  std::optional<CouplingFamily> oracle_family;
};

struct ThresholdRun {
  std::vector<ThresholdReport> rows;
  double phi = 0.0;
  bool exact_t = false;
};

inline ThresholdRun threshold_report(const CouplingFamily& family, const std::vector<QuantumNumbers>& states,
                                     const ThresholdOptions& opt, const Settings& s) {
  ThresholdRun run;
  run.exact_t = opt.exact_t;
  run.phi = opt.phi ? *opt.phi : fit_phi(action_profile(family.reference(), s));
  const std::optional<double> slope = opt.exact_t ? std::nullopt : std::optional<double>(run.phi);
  const auto& oracle = opt.oracle_family ? *opt.oracle_family : family;
  for (const auto& q : states) {
    ThresholdReport r;
    r.state = q;
    if (opt.exact_t) {
      r.Z_pred_ren = critical_coupling(family, q, Target::renormalized, std::nullopt, s);
      r.Z_pred_unren = critical_coupling(family, q, Target::bare, std::nullopt, s);
      // T recovered from the renormalized condition Φ_m(Z) = T_ren.
      const double phi_m = action(family.at(r.Z_pred_ren), 0.0, s);
      r.T = std::sqrt(phi_m * phi_m + 0.25);
    } else {
      r.T = t_effective(q.nu(), q.lambda(), LinearT{*slope});
      r.Z_pred_ren = critical_coupling(family, q, Target::renormalized, slope, s);
      r.Z_pred_unren = critical_coupling(family, q, Target::bare, slope, s);
    }
    r.T_ren = t_ren(r.T);
    if (opt.with_oracle) {
      const double Z = exact_critical_coupling(oracle.maker(), q.lambda(), q.n, s, r.Z_pred_ren);
      r.Z_exact = Z;
      r.rel_err_ren = std::abs(r.Z_pred_ren - Z) / Z;
      r.rel_err_unren = std::abs(r.Z_pred_unren - Z) / Z;
    }
    run.rows.push_back(r);
  }
  return run;
}

struct RenormalizationRow {
  QuantumNumbers state;
  double T;
  double T_ren;
  double reduction;  // (Z_unren − Z_ren) / Z_unren
};

namespace detail {

inline void sort_by_T(std::vector<RenormalizationRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const RenormalizationRow& x, const RenormalizationRow& y) { return x.T < y.T; });
}

}  // namespace detail

/// Relative threshold reduction for a linear-coupling well, where both
/// couplings are proportional to the square of their target.
inline std::vector<RenormalizationRow> renormalization_effect(const std::vector<QuantumNumbers>& states,
                                                              double phi) {
  std::vector<RenormalizationRow> rows;
  for (const auto& q : states) {
    const double T = t_effective(q.nu(), q.lambda(), LinearT{phi});
    const double Tr = t_ren(T);
    rows.push_back({q, T, Tr, (T * T - Tr * Tr) / (T * T)});
  }
  detail::sort_by_T(rows);
  return rows;
}

/// Same table with both couplings solved on an actual family.
inline std::vector<RenormalizationRow> renormalization_effect(const CouplingFamily& family,
                                                              const std::vector<QuantumNumbers>& states,
                                                              double phi, const Settings& s) {
  std::vector<RenormalizationRow> rows;
  for (const auto& q : states) {
    const double T = t_effective(q.nu(), q.lambda(), LinearT{phi});
    const double z_ren = critical_coupling(family, q, Target::renormalized, phi, s);
    const double z_bare = critical_coupling(family, q, Target::bare, phi, s);
    rows.push_back({q, T, t_ren(T), (z_bare - z_ren) / z_bare});
  }
  detail::sort_by_T(rows);
  return rows;
}

}  // namespace tren
