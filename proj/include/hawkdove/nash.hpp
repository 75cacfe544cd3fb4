#pragma once

#include <optional>
#include <vector>

#include "hawkdove/catalog.hpp"
#include "hawkdove/game.hpp"

namespace hawkdove {

struct NashReport {
  SimplexState candidate;
  std::optional<EquilibriumId> source;
  bool via_stability = false;
  bool via_best_response = false;
  std::vector<Strategy> support;
  double margin = 0.0;
  // Support strategies whose payoff deviates from the average by more than tol_nash.
  std::vector<Strategy> unequal_support;
};

double nash_tolerance(const Params& p);

/// Catalog points classified StableNode, lifted to four shares and cross-checked
/// with best_response_check.
std::vector<NashReport> nash_via_stability(const Params& p);

/// Symmetric Nash test: margin = u_bar - max_i u_i against the population `sigma`.
NashReport best_response_check(const Params& p, const SimplexState& sigma);

}  // namespace hawkdove
