#include "hawkdove/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "hawkdove/error.hpp"
#include "hawkdove/ode.hpp"

namespace hawkdove {

void IntegrationConfig::validate() const {
  const bool ok = rtol > 0 && atol > 0 && t_end > 0 && max_step > 0 && convergence_eps > 0 &&
                  record_stride >= 0 && std::isfinite(t_end) && std::isfinite(max_step);
  if (!ok) throw Error(ErrorCode::InvalidArgument, "integration tolerances and horizon must be positive");
}

std::string_view terminal_name(Terminal t) {
  switch (t) {
    case Terminal::ConvergedToEquilibrium: return "ConvergedToEquilibrium";
    case Terminal::TimeLimit: return "TimeLimit";
    case Terminal::StepFailure: return "StepFailure";
  }
  return "?";
}

ReducedState Trajectory::final_state() const {
  const Sample& s = samples.back();
  return {s.x, s.y, s.z};
}

std::optional<EquilibriumId> nearest_equilibrium(const Params& p, const ReducedState& s, double radius) {
  std::optional<EquilibriumId> best;
  double best_d = radius;
  for (auto id : kEquilibria) {
    const auto q = equilibrium_coords(p, id);
    if (!q) continue;
    const double d = std::hypot(s.x - q->x, s.y - q->y, s.z - q->z);
    if (d < best_d) {
      best = id;
      best_d = d;
    }
  }
  return best;
}

namespace {

// Clamp tiny negative shares (and a sum overshooting 1 by at most tol_simplex).
// Returns false if the state left the simplex by more than the tolerance.
bool project(ode::Vec<3>& s, Trajectory& traj) {
  const double w = 1.0 - s[0] - s[1] - s[2];
  traj.min_component = std::min({traj.min_component, s[0], s[1], s[2], w});
  traj.max_sum_error = std::max(traj.max_sum_error, std::abs(s[0] + s[1] + s[2] + w - 1.0));
  if (std::min({s[0], s[1], s[2], w}) < -kTolSimplex) return false;
  for (double& v : s) {
    if (v < 0.0) {
      v = 0.0;
      ++traj.clamp_count;
    }
  }
  const double sum = s[0] + s[1] + s[2];
  if (sum > 1.0) {
    for (double& v : s) v /= sum;
    ++traj.clamp_count;
  }
  return true;
}

Sample make_sample(double t, const ode::Vec<3>& s) { return {t, s[0], s[1], s[2], 1.0 - s[0] - s[1] - s[2]}; }

}  // namespace

Trajectory integrate(const Params& p, const ReducedState& s0, const IntegrationConfig& cfg) {
  cfg.validate();
  if (!s0.in_simplex()) throw Error(ErrorCode::InvalidStart, "initial state is off the simplex");

  Trajectory traj;
  ode::Vec<3> y = s0.as_array();
  traj.samples.push_back(make_sample(0.0, y));

  auto converged = [&](const ode::Vec<3>& s) {
    return max_abs(field_3d(p, ReducedState::from_array(s))) < cfg.convergence_eps;
  };
  auto finish = [&](Terminal t) {
    traj.terminal = t;
    if (t == Terminal::ConvergedToEquilibrium) traj.equilibrium = nearest_equilibrium(p, traj.final_state());
    return traj;
  };

  if (converged(y)) return finish(Terminal::ConvergedToEquilibrium);

  const ode::Options opt{cfg.rtol, cfg.atol, cfg.t_end, cfg.max_step};
  auto rhs = [&](const ode::Vec<3>& s) { return field_3d(p, ReducedState::from_array(s)); };
  double last_recorded = 0.0;
  const auto stats = ode::dormand_prince<3>(rhs, y, opt, [&](double t, ode::Vec<3>& s) {
    if (!project(s, traj)) return ode::Verdict::Reject;
    const bool done = converged(s);
    if (done || cfg.record_stride <= 0.0 || t - last_recorded >= cfg.record_stride) {
      traj.samples.push_back(make_sample(t, s));
      last_recorded = t;
    }
    return done ? ode::Verdict::Stop : ode::Verdict::Continue;
  });

  traj.accepted_steps = stats.accepted;
  traj.rejected_steps = stats.rejected;
  if (traj.samples.back().t != stats.t) traj.samples.push_back(make_sample(stats.t, y));
  switch (stats.outcome) {
    case ode::Outcome::Stopped: return finish(Terminal::ConvergedToEquilibrium);
    case ode::Outcome::TimeLimit: return finish(Terminal::TimeLimit);
    case ode::Outcome::StepFailure: return finish(Terminal::StepFailure);
  }
  return traj;
}

std::vector<BatchItem> batch_integrate(const Params& p, const std::vector<ReducedState>& starts,
                                       const IntegrationConfig& cfg, unsigned threads) {
  std::vector<BatchItem> out(starts.size());
  auto run = [&](std::size_t i) {
    try {
      out[i].trajectory = integrate(p, starts[i], cfg);
    } catch (const Error& e) {
      out[i].error = e.what();
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, starts.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < starts.size(); ++i) run(i);
    return out;
  }
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < starts.size(); i += threads) run(i);
      });
    }
  }
  return out;
}

std::vector<ReducedState> random_interior_starts(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ReducedState> out;
  out.reserve(n);
  while (out.size() < n) {
    std::array<double, 3> u = {unit(rng), unit(rng), unit(rng)};
    std::sort(u.begin(), u.end());
    const ReducedState s{u[0], u[1] - u[0], u[2] - u[1]};
    // Spacings of exactly zero would put the start on a face.
    if (s.x > 0.0 && s.y > 0.0 && s.z > 0.0 && s.w() > 0.0) out.push_back(s);
  }
  return out;
}

}  // namespace hawkdove
