#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "tren/tren.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace tren;

namespace {

FormalWell quadratic_well() {
  FormalWell fw;
  fw.V = [](double x) { return 0.5 * x * x; };
  fw.dV = [](double x) { return x; };
  fw.d2V = [](double) { return 1.0; };
  return fw;
}

// s with s(s + 1) = Z / (2a²).
double pt_s(double a, double Z) { return 0.5 * (-1 + std::sqrt(1 + 2 * Z / (a * a))); }

}  // namespace

TEST_CASE("matched first defect") {
  CHECK(delta1_matched(2.0) == -0.0625);
  CHECK(delta1_matched(0.5) == -0.25);
  CHECK(delta1_matched(1e12) < 0);
  CHECK(delta1_matched(1e12) > -1e-12);
  CHECK_THROWS_AS(delta1_matched(0.0), InvalidInput);
  const auto c = matched_correction(2.0);
  CHECK(c.source == CorrectionSource::matched);
  CHECK(c.delta == resum_delta(-0.0625));
}

TEST_CASE("resummed defect values") {
  CHECK(resum_delta(0.0) == 0.0);
  CHECK_THAT(resum_delta(0.25), WithinRel(0.5 / (1 + std::sqrt(2.0)), 1e-15));
  CHECK_THAT(resum_delta(0.25), WithinAbs(0.207107, 1e-6));
  CHECK_THAT(resum_delta(10.0), WithinRel(20.0 / (1 + std::sqrt(1601.0)), 1e-15));
  CHECK_THAT(resum_delta(10.0), WithinAbs(0.487657, 1e-6));
  CHECK_THAT(resum_delta(10.0), WithinAbs(0.4875, 2e-4));
  CHECK(resum_delta(-3.0) == -resum_delta(3.0));
}

TEST_CASE("resummed defect limits and alternate form") {
  for (double d1 = -0.05; d1 <= 0.05; d1 += 0.001) CHECK(std::abs(resum_delta(d1) - d1) <= 8 * std::pow(std::abs(d1), 3) + 1e-18);
  for (double d1 : {10.0, 100.0, 1e4, -20.0}) {
    const double asym = (d1 > 0 ? 0.5 : -0.5) - 1 / (8 * d1);
    CHECK(std::abs(resum_delta(d1) - asym) <= 1.0 / (16 * d1 * d1));
  }
  // The alternate form cancels for small δ₁; its rounding error grows like eps/δ₁².
  for (double d1 : {-5.0, -0.3, -1e-5, 2e-6, 0.01, 0.7, 40.0})
    CHECK_THAT(resum_delta(d1), WithinRel(resum_delta_alternate(d1), std::max(1e-12, 1e-15 / (d1 * d1))));
  // |δ| < 1/2 always.
  for (double d1 : {-1e8, -1.0, 1.0, 1e8}) CHECK(std::abs(resum_delta(d1)) < 0.5);
}

TEST_CASE("resummation of the matched defect") {
  for (double pm : {0.3, 1.0, 2.5, 10.0, 1e-3, 1e3})
    CHECK_THAT(resum_delta(delta1_matched(pm)), WithinAbs(pm - std::sqrt(pm * pm + 0.25), 1e-12));
}

TEST_CASE("ground-state thresholds") {
  CHECK(ground_state_threshold(0) == 0.0);
  CHECK_THAT(ground_state_threshold(1), WithinRel(std::sqrt(2.0), 1e-15));
  CHECK_THAT(ground_state_threshold(2), WithinRel(std::sqrt(6.0), 1e-15));
  for (int n = 0; n < 20; ++n) CHECK_THAT(ground_state_threshold(n), WithinAbs(std::sqrt(n * (n + 1.0)), 1e-13));
  CHECK_THROWS_AS(ground_state_threshold(-1), InvalidInput);
}

TEST_CASE("integral defect vanishes on the harmonic well") {
  const Settings s;
  const auto fw = quadratic_well();
  for (double e : {0.1, 1.0, 3.0, 25.0}) CHECK_THAT(delta1_integral(fw, e, s), WithinAbs(0.0, 1e-8));
}

TEST_CASE("integral defect on the Lenz formal well") {
  const Settings s;
  for (double a : {0.5, 1.0, 2.0}) {
    const double Z = 8.0;
    const auto w = to_log_well(Lenz{a, Z}, s);
    const auto fw = formal_well(w);
    // F = 2πa√A ε − (3π/2)a ε²/√A with A = V_m/2, so F'' = −3πa/√A.
    const double A = 0.5 * w.V_m;
    const double expected = -3 * std::numbers::pi * a / std::sqrt(A) / (24 * std::numbers::pi);
    for (double frac : {0.2, 0.5, 0.8}) CHECK_THAT(delta1_integral(fw, frac * fw.ceiling(), s), WithinRel(expected, 1e-6));
  }
  const auto fw = formal_well(to_log_well(Lenz{1.0, 8.0}, s));
  const double d04 = delta1_integral(fw, 0.4, s);
  const double ratio = d04 / delta1_matched(2.0);
  CHECK_THAT(ratio, WithinRel(std::sqrt(2.0), 1e-6));
}

TEST_CASE("integral defect stencil range") {
  const Settings s;
  const auto fw = formal_well(to_log_well(Lenz{1.0, 8.0}, s));
  CHECK_THROWS_AS(delta1_integral(fw, 1e-4, s), std::domain_error);
  CHECK_THROWS_AS(delta1_integral(fw, 2.0, s), std::domain_error);
}

TEST_CASE("spectrum of Lenz wells") {
  const Settings s;
  const auto w8 = to_log_well(Lenz{1.0, 8.0}, s);
  const double s8 = 0.5 * (std::sqrt(17.0) - 1);
  CHECK_THAT(solve_spectrum(w8, 0, s), WithinAbs(s8, 1e-10));
  CHECK_THAT(solve_spectrum(w8, 1, s), WithinAbs(s8 - 1, 1e-10));
  CHECK_THAT(solve_spectrum(w8, 0, s), WithinAbs(1.561553, 1e-6));
  CHECK_THROWS_AS(solve_spectrum(w8, 2, s), NoSuchLevel);

  const auto w3 = to_log_well(Lenz{1.0, 3.0}, s);
  CHECK_THAT(solve_spectrum(w3, 0, s), WithinAbs(0.5 * (std::sqrt(7.0) - 1), 1e-10));
  CHECK_THAT(solve_spectrum(to_log_well(Lenz{1.0, 4.0}, s), 0, s), WithinAbs(1.0, 1e-10));
  CHECK_THROWS_AS(solve_spectrum(w3, 1, s), NoSuchLevel);
  CHECK_THROWS_AS(solve_spectrum(w3, -1, s), InvalidInput);

  for (double a : {0.5, 2.0}) {
    for (double Z : {2.0, 30.0}) {
      const auto w = to_log_well(Lenz{a, Z}, s);
      const double sv = pt_s(a, Z);
      for (int n = 0; a * (sv - n) > 1e-6; ++n) CHECK_THAT(solve_spectrum(w, n, s), WithinAbs(a * (sv - n), 1e-9));
    }
  }
}

TEST_CASE("spectrum count matches the oracle") {
  const Settings s;
  for (double Z : {0.5, 3.0, 8.0, 20.0}) {
    const auto w = to_log_well(Lenz{1.0, Z}, s);
    const double phi_m = action(w, 0.0, s);
    int levels = 0;
    while (ground_state_threshold(levels) <= phi_m) {
      CHECK_NOTHROW(solve_spectrum(w, levels, s));
      ++levels;
    }
    CHECK_THROWS_AS(solve_spectrum(w, levels, s), NoSuchLevel);
    // Levels with λ_n above a small probe λ equal the node count at that λ.
    const double probe = 1e-3;
    int above = 0;
    for (int n = 0; n < levels; ++n)
      if (solve_spectrum(w, n, s) > probe) ++above;
    CHECK(count_bound_states(w, probe, s).count == above);
  }
}
