#include "hawkdove/two_strategy.hpp"

#include <algorithm>
#include <cmath>

#include "hawkdove/error.hpp"
#include "hawkdove/ode.hpp"

namespace hawkdove::two {

PayoffMatrix2 build_payoff_matrix(const Params& p) {
  return {{{(p.v - p.c) / 2, p.v}, {0.0, p.v / 2}}};
}

double f(const Params& p, HawkShare s, Form form) {
  const double z = s.z;
  if (form == Form::Factored && p.c == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "factored form divides by c = 0");
  }
  if (form == Form::Limit || (form == Form::Auto && p.c == 0.0)) {
    return 0.5 * p.v * z * (1.0 - z) - 0.5 * p.c * z * z * (1.0 - z);
  }
  return 0.5 * p.c * z * (1.0 - z) * (p.v / p.c - z);
}

double f_prime(const Params& p, HawkShare s) {
  const double z = s.z;
  return 0.5 * (p.v - 2.0 * p.v * z + p.c * z * (-2.0 + 3.0 * z));
}

std::string_view stability_name(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::Degenerate: return "degenerate";
  }
  return "?";
}

std::vector<Point1D> classify_1d(const Params& p) {
  std::vector<double> rest = {0.0, 1.0};
  if (p.c != 0.0) rest.push_back(p.v / p.c);
  std::vector<Point1D> out;
  for (double z : rest) {
    const double slope = f_prime(p, {z});
    const double tol = 1e-9 * (1.0 + std::abs(slope));
    Stability s = Stability::Degenerate;
    if (slope < -tol) s = Stability::Stable;
    else if (slope > tol) s = Stability::Unstable;
    out.push_back({z, slope, s});
  }
  return out;
}

std::vector<EquilibriumId> correspondence(RestPoint r) {
  switch (r) {
    case RestPoint::Zero: return {EquilibriumId::P7};
    case RestPoint::Interior: return {EquilibriumId::P1, EquilibriumId::P4};
    case RestPoint::One: return {};
  }
  return {};
}

Trajectory1D integrate(const Params& p, HawkShare z0, const IntegrationConfig& cfg) {
  cfg.validate();
  if (!(z0.z >= -kTolSimplex && z0.z <= 1.0 + kTolSimplex)) {
    throw Error(ErrorCode::InvalidStart, "initial Hawk share must lie in [0, 1]");
  }
  Trajectory1D out;
  out.samples.push_back({0.0, z0.z});
  auto rhs = [&](const ode::Vec<1>& y) { return ode::Vec<1>{f(p, {y[0]})}; };
  if (std::abs(f(p, z0)) < cfg.convergence_eps) {
    out.terminal = Terminal::ConvergedToEquilibrium;
    return out;
  }

  ode::Options opt{cfg.rtol, cfg.atol, cfg.t_end, cfg.max_step};
  ode::Vec<1> y{z0.z};
  double last_recorded = 0.0;
  const auto stats = ode::dormand_prince<1>(rhs, y, opt, [&](double t, ode::Vec<1>& s) {
    if (s[0] < -kTolSimplex || s[0] > 1.0 + kTolSimplex) return ode::Verdict::Reject;
    s[0] = std::clamp(s[0], 0.0, 1.0);
    const bool done = std::abs(f(p, {s[0]})) < cfg.convergence_eps;
    if (done || cfg.record_stride <= 0.0 || t - last_recorded >= cfg.record_stride) {
      out.samples.push_back({t, s[0]});
      last_recorded = t;
    }
    return done ? ode::Verdict::Stop : ode::Verdict::Continue;
  });
  out.accepted_steps = stats.accepted;
  switch (stats.outcome) {
    case ode::Outcome::Stopped: out.terminal = Terminal::ConvergedToEquilibrium; break;
    case ode::Outcome::TimeLimit: out.terminal = Terminal::TimeLimit; break;
    case ode::Outcome::StepFailure: out.terminal = Terminal::StepFailure; break;
  }
  if (out.samples.back().t != stats.t) out.samples.push_back({stats.t, y[0]});
  return out;
}

}  // namespace hawkdove::two
