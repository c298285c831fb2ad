// Predicted and exact critical couplings for the first few Lenz states.

#include <cstdio>

#include "tren/tren.hpp"

int main() {
  const tren::Settings s;
  const double a = 1.0;
  const auto family = tren::CouplingFamily::from_potential(tren::Lenz{a, 8.0}, s);
  std::vector<tren::QuantumNumbers> states;
  for (int n = 0; n <= 2; ++n)
    for (int l = 0; l <= 2; ++l) states.emplace_back(n, l);

  tren::ThresholdOptions opt;
  opt.phi = 1.0 / a;
  opt.with_oracle = true;
  const auto run = tren::threshold_report(family, states, opt, s);

  std::printf("%2s %2s %12s %12s %12s %10s\n", "n", "l", "Z_ren", "Z_unren", "Z_exact", "rel_err");
  for (const auto& r : run.rows)
    std::printf("%2d %2d %12.8f %12.8f %12.8f %10.2e\n", r.state.n, r.state.l, r.Z_pred_ren, r.Z_pred_unren,
                *r.Z_exact, *r.rel_err_ren);
}
