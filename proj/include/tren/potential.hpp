#pragma once

// Central potentials U(r) < 0 with r²U → 0 at both ends, and the quantum
// number bookkeeping that goes with them.

#include <cmath>
#include <memory>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "tren/detail/interpolation.hpp"
#include "tren/errors.hpp"

namespace tren {

/// Numerical controls shared by every module. Units: ℏ as given, m = 1.
struct Settings {
  double hbar = 1.0;
  double quad_tol = 1e-10;
  double ode_tol = 1e-10;
  /// W below domain_cut·V_m is treated as zero when truncating the ρ-line.
  double domain_cut = 1e-14;

  void validate() const {
    if (!(hbar > 0) || !(quad_tol > 0) || !(ode_tol > 0) || !(domain_cut > 0))
      throw InvalidInput("Settings: all fields must be strictly positive");
    if (!(domain_cut < 1)) throw InvalidInput("Settings: domain_cut must be < 1");
  }
};

inline double lambda_of(int l, int d) {
  if (l < 0) throw InvalidInput("orbital quantum number l must be >= 0");
  if (d < 2) throw InvalidInput("space dimension d must be >= 2");
  return l + 0.5 * (d - 2);
}

struct QuantumNumbers {
  int n = 0;
  int l = 0;
  int d = 3;

  QuantumNumbers() = default;
  QuantumNumbers(int n_, int l_, int d_ = 3) : n(n_), l(l_), d(d_) {
    if (n < 0) throw InvalidInput("radial quantum number n must be >= 0");
    (void)lambda_of(l, d);
  }

  double nu() const { return n + 0.5; }
  double lambda() const { return lambda_of(l, d); }
};

/// U(r) = -Z / (r² (r^a + r^-a)²).
struct Lenz {
  double a = 1.0;
  double Z = 1.0;
};

/// U(r) = -Z / (r (1 + r)²); the a = 1/2 member of the Lenz family.
struct Tietz {
  double Z = 1.0;
};

/// Sampled U(r) < 0. Interpolated monotonically in (ln r, ln W) with
/// W = -2r²U; outside the grid |U| continues as r^-q0 (left) and
/// r^-qinf (right).
class Tabulated {
 public:
  Tabulated(std::vector<double> r, std::vector<double> U, double q0, double qinf)
      : r_(std::move(r)), U_(std::move(U)), q0_(q0), qinf_(qinf) {
    if (r_.size() != U_.size()) throw InvalidInput("tabulated potential: r and U differ in length");
    if (r_.size() < 3) throw InvalidInput("tabulated potential: need at least 3 samples");
    std::vector<double> rho(r_.size()), logw(r_.size());
    for (std::size_t i = 0; i < r_.size(); ++i) {
      if (!(r_[i] > 0)) throw InvalidInput("tabulated potential: r must be positive");
      if (i > 0 && !(r_[i] > r_[i - 1]))
        throw InvalidInput("tabulated potential: r must be strictly ascending");
      if (!(U_[i] < 0)) throw InvalidInput("tabulated potential: U must be negative");
      rho[i] = std::log(r_[i]);
      logw[i] = std::log(-2.0 * r_[i] * r_[i] * U_[i]);
    }
    if (!std::isfinite(q0_) || !std::isfinite(qinf_))
      throw InvalidInput("tabulated potential: q0 and qinf must be finite");
    spline_ = std::make_shared<const detail::MonotoneCubic>(std::move(rho), std::move(logw));
  }

  /// W(ρ) = -2 e^{2ρ} U(e^ρ), evaluated directly on the interpolant.
  double well(double rho) const {
    const auto& s = *spline_;
    if (rho < s.front_x()) return std::exp(s.front_y() + (2.0 - q0_) * (rho - s.front_x()));
    if (rho > s.back_x()) return std::exp(s.back_y() + (2.0 - qinf_) * (rho - s.back_x()));
    return std::exp(s(rho));
  }

  double operator()(double r) const { return -well(std::log(r)) / (2.0 * r * r); }

  const std::vector<double>& r() const { return r_; }
  const std::vector<double>& U() const { return U_; }
  double q0() const { return q0_; }
  double qinf() const { return qinf_; }
  double rho_front() const { return spline_->front_x(); }
  double rho_back() const { return spline_->back_x(); }

  /// Copy with U multiplied by `factor` (> 0).
  Tabulated scaled(double factor) const {
    std::vector<double> u = U_;
    for (auto& v : u) v *= factor;
    return Tabulated(r_, std::move(u), q0_, qinf_);
  }

 private:
  std::vector<double> r_, U_;
  double q0_, qinf_;
  std::shared_ptr<const detail::MonotoneCubic> spline_;
};

using RadialPotential = std::variant<Lenz, Tietz, Tabulated>;

namespace detail {

inline double lenz_value(double a, double Z, double r) {
  const double ra = std::pow(r, a);
  const double s = ra + 1.0 / ra;
  return -Z / (r * r * s * s);
}

// -2 e^{2ρ} U(e^ρ) for the Lenz family, simplified to 2Z / (e^{aρ} + e^{-aρ})².
inline double lenz_well(double a, double Z, double rho) {
  const double s = std::exp(a * rho) + std::exp(-a * rho);
  return 2.0 * Z / (s * s);
}

}  // namespace detail

inline double potential_value(const RadialPotential& p, double r) {
  return std::visit(
      [r](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Lenz>) {
          return detail::lenz_value(f.a, f.Z, r);
        } else if constexpr (std::is_same_v<T, Tietz>) {
          return detail::lenz_value(0.5, f.Z, r);
        } else {
          return f(r);
        }
      },
      p);
}

inline std::string family_name(const RadialPotential& p) {
  switch (p.index()) {
    case 0: return "lenz";
    case 1: return "tietz";
    default: return "tabulated";
  }
}

/// The overall depth parameter: Z for the analytic families, the
/// multiplier of the sampled U (1 as loaded) for tabulated data.
inline double coupling_of(const RadialPotential& p) {
  if (const auto* l = std::get_if<Lenz>(&p)) return l->Z;
  if (const auto* t = std::get_if<Tietz>(&p)) return t->Z;
  return 1.0;
}

/// Same shape, coupling replaced. For tabulated data the sampled U is
/// rescaled by Z relative to the loaded samples.
inline RadialPotential with_coupling(const RadialPotential& p, double Z) {
  if (const auto* l = std::get_if<Lenz>(&p)) return Lenz{l->a, Z};
  if (std::holds_alternative<Tietz>(p)) return Tietz{Z};
  return std::get<Tabulated>(p).scaled(Z);
}

struct ConditionReport {
  bool attractive = true;
  bool near_zero = true;      // r²U → 0 as r → 0
  bool near_infinity = true;  // r²U → 0 as r → ∞
  bool well_vanishes = true;  // W(±∞) = 0
  std::string detail;

  bool ok() const { return attractive && near_zero && near_infinity && well_vanishes; }
};

inline ConditionReport check_conditions(const RadialPotential& p) {
  ConditionReport rep;
  std::ostringstream msg;
  if (const auto* l = std::get_if<Lenz>(&p)) {
    // r²U ~ -Z r^{2a} near 0 and ~ -Z r^{-2a} near ∞.
    if (!(l->a > 0)) {
      rep.near_zero = rep.near_infinity = false;
      msg << "lenz: a = " << l->a << " must be > 0 (r^2 U does not vanish at r -> 0 or r -> inf); ";
    }
    if (!(l->Z > 0)) {
      rep.attractive = false;
      msg << "lenz: Z = " << l->Z << " must be > 0; ";
    }
  } else if (const auto* t = std::get_if<Tietz>(&p)) {
    if (!(t->Z > 0)) {
      rep.attractive = false;
      msg << "tietz: Z = " << t->Z << " must be > 0; ";
    }
  } else {
    const auto& tab = std::get<Tabulated>(p);
    const auto& r = tab.r();
    const auto& u = tab.U();
    const std::size_t n = r.size();
    auto exponent = [&](std::size_t i, std::size_t j) {
      return -(std::log(-u[j]) - std::log(-u[i])) / (std::log(r[j]) - std::log(r[i]));
    };
    const double q_front = exponent(0, 1);
    const double q_back = exponent(n - 2, n - 1);
    if (!(tab.q0() < 2)) {
      rep.near_zero = false;
      msg << "tabulated: q0 = " << tab.q0() << " must be < 2 (r^2 U does not vanish at r -> 0); ";
    } else if (!(q_front < 2)) {
      rep.near_zero = false;
      msg << "tabulated: leading samples decay like r^-" << q_front << ", need exponent < 2; ";
    }
    if (!(tab.qinf() > 2)) {
      rep.near_infinity = false;
      msg << "tabulated: qinf = " << tab.qinf() << " must be > 2 (r^2 U does not vanish at r -> inf); ";
    } else if (!(q_back > 2)) {
      rep.near_infinity = false;
      msg << "tabulated: trailing samples decay like r^-" << q_back << ", need exponent > 2; ";
    }
  }
  rep.well_vanishes = rep.near_zero && rep.near_infinity;
  rep.detail = msg.str();
  return rep;
}

}  // namespace tren
