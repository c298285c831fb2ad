#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "tren/tren.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace tren;

TEST_CASE("linear effective number") {
  CHECK(t_effective(0.5, 0.5, LinearT{1.0}) == 1.0);
  CHECK(t_effective(1.5, 1.5, LinearT{1.75}) == 4.125);
  CHECK(t_effective(2.5, 0.0, LinearT{3.0}) == 2.5);
  CHECK_THROWS_AS(t_effective(0.4, 1.0, LinearT{1.0}), InvalidInput);
  CHECK_THROWS_AS(t_effective(0.5, -1.0, LinearT{1.0}), InvalidInput);
}

TEST_CASE("sampled effective number") {
  const Settings s;
  const auto prof = action_profile(to_log_well(Lenz{2.0, 8.0}, s), s);
  CHECK(t_effective(1.5, 0.0, SampledT{&prof}) == 1.5);
  CHECK_THAT(t_effective(0.5, 1.5, SampledT{&prof}), WithinAbs(1.25, 1e-9));
  const auto e = effective_numbers(QuantumNumbers(0, 1), SampledT{&prof});
  CHECK(e.exact_t);
  CHECK_THAT(e.phi, WithinAbs(0.5, 1e-9));
}

TEST_CASE("renormalized effective number") {
  CHECK(t_ren(0.5) == 0.0);
  CHECK_THAT(t_ren(1.0), WithinRel(std::sqrt(3.0) / 2, 1e-15));
  CHECK_THAT(t_ren(1.0), WithinAbs(0.866025, 1e-6));
  CHECK_THAT(t_ren(2.5), WithinRel(std::sqrt(6.0), 1e-15));
  CHECK_THROWS_AS(t_ren(0.49), std::domain_error);
  for (double T = 0.5; T < 50; T += 0.731) CHECK(t_ren(T) < T);
}

TEST_CASE("large-T expansion") {
  CHECK(t_ren_expansion(2.0) == 1.9375);
  CHECK_THAT(t_ren(2.0), WithinAbs(1.936492, 1e-6));
  CHECK_THAT(t_ren_expansion(2.0) - t_ren(2.0), WithinAbs(1.01e-3, 1e-5));
  CHECK(t_ren_expansion(2.0) - t_ren(2.0) <= 1.0 / (64 * 8));
  CHECK(t_ren_expansion(10.0) == 9.9875);
  CHECK_THAT(t_ren(10.0), WithinAbs(9.987492, 1e-6));
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(1.0, 100.0);
  double prev_gap = (t_ren_expansion(1.0) - t_ren(1.0));
  for (int i = 0; i < 1000; ++i) {
    const double T = dist(rng);
    const double gap = t_ren_expansion(T) - t_ren(T);
    CHECK(gap >= 0);
    CHECK(gap <= 1.0 / (64 * T * T * T));
  }
  for (double T = 1.5; T < 100; T += 0.5) {
    const double gap = t_ren_expansion(T) - t_ren(T);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("effective numbers bundle") {
  const auto e = effective_numbers(QuantumNumbers(0, 0, 3), LinearT{1.75});
  CHECK(e.T == 1.375);
  CHECK_THAT(e.T_ren, WithinRel(std::sqrt(1.375 * 1.375 - 0.25), 1e-15));
  CHECK_THAT(e.T_ren, WithinAbs(1.28087, 1e-5));
  CHECK_FALSE(e.exact_t);
}

TEST_CASE("pairwise order examples") {
  CHECK(compare_order({1.5, 0.5}, {0.5, 1.5}, 1.0) == std::weak_ordering::equivalent);
  CHECK(compare_order({1.5, 0.5}, {0.5, 1.5}, 1.75) == std::weak_ordering::less);
  CHECK(compare_order({0.5, 1.5}, {1.5, 0.5}, 1.75) == std::weak_ordering::greater);
  CHECK(t_effective(1.5, 0.5, LinearT{1.75}) == 2.375);
  CHECK(t_effective(0.5, 1.5, LinearT{1.75}) == 3.125);
}

TEST_CASE("renormalization never changes the order") {
  std::mt19937_64 rng(20261014);
  std::uniform_real_distribution<double> dist(0.5, 10.0);
  int mismatches = 0;
  for (double phi : {1.0, 1.75, 2.0}) {
    for (int i = 0; i < 10000; ++i) {
      const double nu = dist(rng), lam = dist(rng), nu2 = dist(rng), lam2 = dist(rng);
      const double T1 = t_effective(nu, lam, LinearT{phi});
      const double T2 = t_effective(nu2, lam2, LinearT{phi});
      if ((T1 < T2) != (t_ren(T1) < t_ren(T2)) || (T1 > T2) != (t_ren(T1) > t_ren(T2))) ++mismatches;
      CHECK_NOTHROW(compare_order({nu, lam}, {nu2, lam2}, phi));
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("ordering table") {
  const auto rows = ordering_table(3, 3, 3, 1.75);
  REQUIRE(rows.size() == 16);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i - 1].T_ren <= rows[i].T_ren);
    CHECK(rows[i - 1].T <= rows[i].T);
  }
  CHECK(rows.front().n == 0);
  CHECK(rows.front().l == 0);
  // Sorting by T alone gives the same sequence.
  auto by_T = rows;
  std::stable_sort(by_T.begin(), by_T.end(), [](const OrderingRow& a, const OrderingRow& b) { return a.T < b.T; });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(by_T[i].n == rows[i].n);
    CHECK(by_T[i].l == rows[i].l);
  }
  // φ = 1: T = n + l + 1 ties are broken by n.
  const auto ties = ordering_table(2, 2, 3, 1.0);
  CHECK(ties[1].n == 0);
  CHECK(ties[1].l == 1);
  CHECK(ties[2].n == 1);
  CHECK(ties[2].l == 0);
  CHECK_THROWS_AS(ordering_table(-1, 2, 3, 1.0), InvalidInput);
}
