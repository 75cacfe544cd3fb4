#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace hawkdove {

// Membership tolerance for simplex checks throughout the library.
inline constexpr double kTolSimplex = 1e-9;

/// Game parameters: resource value `v` and contest cost `c`. Any sign is allowed.
struct Params {
  double v = 0.0;
  double c = 0.0;

  bool finite() const;
};

/// Pure strategies of the role-conditioned game, "XY" = play X as owner and Y as
/// intruder. The order is fixed everywhere (arrays, CSV columns, reports).
enum class Strategy : std::size_t { HH = 0, HD = 1, DH = 2, DD = 3 };

inline constexpr std::size_t kNumStrategies = 4;
inline constexpr std::array<Strategy, kNumStrategies> kStrategies = {Strategy::HH, Strategy::HD,
                                                                     Strategy::DH, Strategy::DD};

std::string_view strategy_name(Strategy s);

/// Population shares (x, y, z, w) of HH, HD, DH, DD.
struct SimplexState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double w = 0.0;

  double operator[](std::size_t i) const;
  std::array<double, 4> as_array() const { return {x, y, z, w}; }
  double sum() const { return x + y + z + w; }
  bool on_simplex(double tol = kTolSimplex) const;

  static SimplexState uniform() { return {0.25, 0.25, 0.25, 0.25}; }
  static SimplexState pure(Strategy s);
};

/// Row-player payoffs; the column player's payoff is the transpose read.
class PayoffMatrix {
 public:
  using Entries = std::array<std::array<double, kNumStrategies>, kNumStrategies>;

  explicit PayoffMatrix(const Entries& entries) : entries_(entries) {}

  double operator()(Strategy row, Strategy col) const {
    return entries_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
  }
  double at(std::size_t row, std::size_t col) const { return entries_.at(row).at(col); }
  const Entries& entries() const { return entries_; }

 private:
  Entries entries_;
};

PayoffMatrix build_payoff_matrix(const Params& p);

/// pi(s_i, x): row `i` of the matrix contracted with the state.
double strategy_payoff(const PayoffMatrix& m, Strategy i, const SimplexState& s);

/// Population-average payoff in closed form, (v - c(x+y)(x+z)) / 2.
double average_payoff(const Params& p, const SimplexState& s);

}  // namespace hawkdove
