#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "hawkdove/catalog.hpp"
#include "hawkdove/game.hpp"
#include "hawkdove/integrator.hpp"

namespace hawkdove::two {

// Share of Hawks in the classic two-strategy game.
struct HawkShare {
  double z = 0.0;
};

using PayoffMatrix2 = std::array<std::array<double, 2>, 2>;

PayoffMatrix2 build_payoff_matrix(const Params& p);

enum class Form { Auto, Factored, Limit };

// dz/dt. Factored is (c/2) z (1-z) (v/c - z) and throws Error{InvalidArgument} at c = 0.
// Limit is the expanded polynomial (v/2) z (1-z) - (c/2) z^2 (1-z), which reduces to
// (v/2) z (1-z) at c = 0. Auto picks Factored unless c = 0.
double f(const Params& p, HawkShare z, Form form = Form::Auto);
double f_prime(const Params& p, HawkShare z);

enum class Stability { Stable, Unstable, Degenerate };
std::string_view stability_name(Stability s);

struct Point1D {
  double z;
  double slope;
  Stability stability;
};

/// The three rest points {0, 1, v/c} (v/c only when c != 0) with their f' sign.
std::vector<Point1D> classify_1d(const Params& p);

enum class RestPoint { Zero, One, Interior };

/// Catalog points of the four-strategy game matching each rest point; empty when
/// no correspondence is documented (z = 1).
std::vector<EquilibriumId> correspondence(RestPoint r);

struct Sample1D {
  double t, z;
};

struct Trajectory1D {
  std::vector<Sample1D> samples;
  Terminal terminal = Terminal::TimeLimit;
  std::size_t accepted_steps = 0;
};

/// One-dimensional replicator run with the same integrator and stopping rule
/// (|f| < convergence_eps). Throws Error{InvalidStart} unless 0 <= z0 <= 1.
Trajectory1D integrate(const Params& p, HawkShare z0, const IntegrationConfig& cfg = {});

}  // namespace hawkdove::two
