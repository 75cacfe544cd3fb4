#include "hawkdove/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hawkdove {

double ReducedState::operator[](std::size_t i) const {
  switch (i) {
    case 0: return x;
    case 1: return y;
    case 2: return z;
  }
  throw std::out_of_range("ReducedState index");
}

bool ReducedState::in_simplex(double tol) const {
  if (!(std::isfinite(x) && std::isfinite(y) && std::isfinite(z))) return false;
  return x >= -tol && y >= -tol && z >= -tol && x + y + z <= 1.0 + tol;
}

Field4 field_4d(const Params& p, const SimplexState& s) {
  const double v = p.v;
  const double c = p.c;
  const auto [x, y, z, w] = s;
  const double pbar4 = 4.0 * average_payoff(p, s);
  return {
      0.25 * x * (-c * (2 * x + y + z) - pbar4 + v * (4 * w + 2 * x + 3 * (y + z))),
      0.25 * y * (-c * (x + z) - pbar4 + v * (3 * w + x + 2 * (y + z))),
      0.25 * z * (-c * (x + y) - pbar4 + v * (3 * w + x + 2 * (y + z))),
      0.25 * w * (v * (2 * w + y + z) - pbar4),
  };
}

Field3 field_3d(const Params& p, const ReducedState& s) {
  const double v = p.v;
  const double c = p.c;
  const auto [x, y, z] = s;
  return {
      0.25 * x * (c * (2 * x * x + 2 * x * (y + z - 1) + 2 * y * z - y - z) - v * (2 * x + y + z - 2)),
      -0.25 * y * (v * (2 * x + y + z - 1) - c * (2 * x + 2 * y - 1) * (x + z)),
      -0.25 * z * (v * (2 * x + y + z - 1) - c * (x + y) * (2 * x + 2 * z - 1)),
  };
}

double consistency_residual(const Params& p, const ReducedState& s) {
  const Field3 reduced = field_3d(p, s);
  const Field4 full = field_4d(p, s.lift());
  double r = 0.0;
  for (std::size_t i = 0; i < 3; ++i) r = std::max(r, std::abs(reduced[i] - full[i]));
  return r;
}

double max_abs(const Field3& f) {
  return std::max({std::abs(f[0]), std::abs(f[1]), std::abs(f[2])});
}

}  // namespace hawkdove
