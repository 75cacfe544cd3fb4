#include "hawkdove/game.hpp"

#include <cmath>
#include <stdexcept>

namespace hawkdove {

bool Params::finite() const { return std::isfinite(v) && std::isfinite(c); }

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::HH: return "HH";
    case Strategy::HD: return "HD";
    case Strategy::DH: return "DH";
    case Strategy::DD: return "DD";
  }
  return "?";
}

double SimplexState::operator[](std::size_t i) const {
  switch (i) {
    case 0: return x;
    case 1: return y;
    case 2: return z;
    case 3: return w;
  }
  throw std::out_of_range("SimplexState index");
}

bool SimplexState::on_simplex(double tol) const {
  if (!(std::isfinite(x) && std::isfinite(y) && std::isfinite(z) && std::isfinite(w))) return false;
  return x >= -tol && y >= -tol && z >= -tol && w >= -tol && std::abs(sum() - 1.0) <= tol;
}

SimplexState SimplexState::pure(Strategy s) {
  SimplexState out;
  switch (s) {
    case Strategy::HH: out.x = 1.0; break;
    case Strategy::HD: out.y = 1.0; break;
    case Strategy::DH: out.z = 1.0; break;
    case Strategy::DD: out.w = 1.0; break;
  }
  return out;
}

PayoffMatrix build_payoff_matrix(const Params& p) {
  const double v = p.v;
  const double c = p.c;
  return PayoffMatrix({{
      {(v - c) / 2, (3 * v - c) / 4, (3 * v - c) / 4, v},
      {(v - c) / 4, v / 2, (2 * v - c) / 4, 3 * v / 4},
      {(v - c) / 4, (2 * v - c) / 4, v / 2, 3 * v / 4},
      {0.0, v / 4, v / 4, v / 2},
  }});
}

double strategy_payoff(const PayoffMatrix& m, Strategy i, const SimplexState& s) {
  const auto& row = m.entries()[static_cast<std::size_t>(i)];
  return row[0] * s.x + row[1] * s.y + row[2] * s.z + row[3] * s.w;
}

double average_payoff(const Params& p, const SimplexState& s) {
  return 0.5 * (p.v - p.c * (s.x + s.y) * (s.x + s.z));
}

}  // namespace hawkdove
