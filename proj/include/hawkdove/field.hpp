#pragma once

#include <array>

#include "hawkdove/game.hpp"

namespace hawkdove {

/// (x, y, z) with w = 1 - x - y - z implied.
struct ReducedState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double w() const { return 1.0 - x - y - z; }
  double operator[](std::size_t i) const;
  std::array<double, 3> as_array() const { return {x, y, z}; }
  SimplexState lift() const { return {x, y, z, w()}; }
  bool in_simplex(double tol = kTolSimplex) const;

  static ReducedState from_array(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }
  static ReducedState from_simplex(const SimplexState& s) { return {s.x, s.y, s.z}; }
};

using Field3 = std::array<double, 3>;
using Field4 = std::array<double, 4>;

// Constrained four-share replicator field, built from the average payoff.
Field4 field_4d(const Params& p, const SimplexState& s);

// Reduced three-dimensional field as explicitly expanded polynomials. Canonical
// field for all downstream analysis.
Field3 field_3d(const Params& p, const ReducedState& s);

// Max-norm difference between field_3d and the first three components of field_4d.
double consistency_residual(const Params& p, const ReducedState& s);

double max_abs(const Field3& f);

}  // namespace hawkdove
