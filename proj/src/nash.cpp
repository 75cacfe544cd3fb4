#include "hawkdove/nash.hpp"

#include <algorithm>
#include <cmath>

namespace hawkdove {

double nash_tolerance(const Params& p) { return 1e-10 * (1.0 + std::abs(p.v) + std::abs(p.c)); }

NashReport best_response_check(const Params& p, const SimplexState& sigma) {
  const PayoffMatrix m = build_payoff_matrix(p);
  const double tol = nash_tolerance(p);

  std::array<double, kNumStrategies> u{};
  double average = 0.0;
  for (auto s : kStrategies) {
    const std::size_t i = static_cast<std::size_t>(s);
    u[i] = strategy_payoff(m, s, sigma);
    average += sigma[i] * u[i];
  }

  NashReport r;
  r.candidate = sigma;
  r.margin = average - *std::max_element(u.begin(), u.end());
  r.via_best_response = r.margin >= -tol;
  for (auto s : kStrategies) {
    const std::size_t i = static_cast<std::size_t>(s);
    if (sigma[i] <= kTolSimplex) continue;
    r.support.push_back(s);
    if (std::abs(u[i] - average) > tol) r.unequal_support.push_back(s);
  }
  return r;
}

std::vector<NashReport> nash_via_stability(const Params& p) {
  std::vector<NashReport> out;
  for (const auto& rec : catalog(p)) {
    if (!rec.defined || rec.classification != Classification::StableNode) continue;
    NashReport r = best_response_check(p, rec.coords.lift());
    r.source = rec.id;
    r.via_stability = true;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace hawkdove
