#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "tren/tren.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace tren;

namespace {

WellFamily lenz_family(double a, const Settings& s) {
  return [a, s](double Z) { return to_log_well(Lenz{a, Z}, s); };
}

int count_at(double a, double Z, double lambda, const Settings& s) {
  return count_bound_states(to_log_well(Lenz{a, Z}, s), lambda, s).count;
}

}  // namespace

TEST_CASE("analytic Lenz spectrum") {
  const auto l8 = lenz_analytic_spectrum(1.0, 8.0);
  REQUIRE(l8.size() == 2);
  CHECK_THAT(l8[0], WithinAbs(0.5 * (std::sqrt(17.0) - 1), 1e-15));
  CHECK_THAT(l8[1], WithinAbs(0.5 * (std::sqrt(17.0) - 3), 1e-15));
  const auto l4 = lenz_analytic_spectrum(1.0, 4.0);
  REQUIRE(l4.size() == 1);
  CHECK_THAT(l4[0], WithinAbs(1.0, 1e-15));
  for (double Z : {1e-3, 1e-8}) {
    const auto tiny = lenz_analytic_spectrum(1.0, Z);
    REQUIRE(tiny.size() == 1);
    CHECK_THAT(tiny[0], WithinRel(0.5 * Z, 1e-3));
  }
  CHECK_THROWS_AS(lenz_analytic_spectrum(0.0, 1.0), InvalidInput);
}

TEST_CASE("node counts at fixed lambda") {
  const Settings s;
  CHECK(count_at(1.0, 4.0, 0.5, s) == 1);
  CHECK(count_at(1.0, 8.0, 0.5, s) == 2);
  CHECK(count_at(1.0, 1.0, 0.5, s) == 0);
  CHECK_THROWS_AS(count_bound_states(to_log_well(Lenz{1.0, 1.0}, s), 0.0, s), InvalidInput);
}

TEST_CASE("node counts agree with the analytic spectrum for random wells") {
  const Settings s;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> da(0.4, 2.5), dz(0.2, 60.0), dl(0.05, 3.0);
  int checked = 0;
  while (checked < 50) {
    const double a = da(rng), Z = dz(rng), lam = dl(rng);
    const auto spec = lenz_analytic_spectrum(a, Z);
    bool near = false;
    int expected = 0;
    for (double ln : spec) {
      if (std::abs(ln - lam) < 1e-6) near = true;
      if (ln > lam) ++expected;
    }
    if (near) continue;
    INFO("a=" << a << " Z=" << Z << " lambda=" << lam);
    CHECK(count_at(a, Z, lam, s) == expected);
    ++checked;
  }
}

TEST_CASE("node count is non-decreasing in the coupling") {
  const Settings s;
  for (double lam : {0.5, 1.5}) {
    int prev = 0;
    for (double Z = 0.25; Z < 80; Z *= 1.15) {
      const int c = count_at(1.0, Z, lam, s);
      CHECK(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("critical couplings from the oracle") {
  const Settings s;
  CHECK_THAT(exact_critical_coupling(lenz_family(1.0, s), 0.5, 0, s), WithinRel(1.5, 1e-6));
  CHECK_THAT(exact_critical_coupling(lenz_family(1.0, s), 0.5, 1, s), WithinRel(7.5, 1e-6));
  const WellFamily tietz = [s](double Z) { return to_log_well(Tietz{Z}, s); };
  CHECK_THAT(exact_critical_coupling(tietz, 0.5, 0, s), WithinRel(1.0, 1e-6));
  CHECK_THAT(exact_critical_coupling(lenz_family(2.0, s), 1.5, 0, s), WithinRel(10.5, 1e-6));
  CHECK_THROWS_AS(exact_critical_coupling(lenz_family(1.0, s), 0.5, -1, s), InvalidInput);
}

TEST_CASE("oracle is stable under a tighter integrator tolerance") {
  Settings s;
  Settings tight = s;
  tight.ode_tol = 0.5 * s.ode_tol;
  for (double Z : {2.0, 9.0, 33.0}) {
    for (double lam : {0.5, 1.5, 2.5}) {
      const auto w = to_log_well(Lenz{1.0, Z}, s);
      CHECK(count_bound_states(w, lam, s).count == count_bound_states(w, lam, tight).count);
    }
  }
  const double z1 = exact_critical_coupling(lenz_family(1.0, s), 2.5, 2, s);
  const double z2 = exact_critical_coupling(lenz_family(1.0, tight), 2.5, 2, tight);
  CHECK_THAT(z1, WithinRel(z2, 1e-7));
  CHECK_THAT(z1, WithinRel(lenz_exact_threshold(1.0, QuantumNumbers(2, 2)).Z_corrected, 1e-6));
}

TEST_CASE("oracle on a linear-radius well departs from the closed form") {
  const Settings s;
  const WellFamily r1 = [s](double Z) { return to_log_well(Lenz{1.0, Z}, s, LogTransform::linear_radius); };
  const double z = exact_critical_coupling(r1, 0.5, 0, s);
  CHECK(std::abs(z - 1.5) / 1.5 > 1e-3);
}

TEST_CASE("oracle statistics") {
  const Settings s;
  const auto w = to_log_well(Lenz{1.0, 8.0}, s);
  const auto nc = count_bound_states(w, 0.5, s);
  CHECK(nc.step_stats.steps > 0);
  CHECK(nc.rho_span.first == w.rho_min);
  CHECK(nc.rho_span.second == w.rho_max);
}
