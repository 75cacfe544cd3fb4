#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hawkdove/catalog.hpp"

namespace hawkdove {

struct IntegrationConfig {
  double rtol = 1e-6;
  double atol = 1e-9;
  double t_end = 2000.0;
  double max_step = 10.0;
  double convergence_eps = 1e-10;  // on |field_3d|_inf
  double record_stride = 0.0;      // 0 records every accepted step

  void validate() const;
};

enum class Terminal { ConvergedToEquilibrium, TimeLimit, StepFailure };

std::string_view terminal_name(Terminal t);

struct Sample {
  double t, x, y, z, w;
};

struct Trajectory {
  std::vector<Sample> samples;
  Terminal terminal = Terminal::TimeLimit;
  std::optional<EquilibriumId> equilibrium;  // nearest catalog point within 1e-3 on convergence
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t clamp_count = 0;
  // Worst simplex violation seen on accepted steps before clamping.
  double min_component = 0.0;
  double max_sum_error = 0.0;

  const Sample& final_sample() const { return samples.back(); }
  ReducedState final_state() const;
};

/// Adaptive Dormand-Prince integration of field_3d. Components that dip below zero
/// by at most tol_simplex are clamped to zero (and counted); larger excursions
/// reject the step. Throws Error{InvalidStart} if s0 is off the simplex; a step
/// size underflow ends the run with Terminal::StepFailure.
Trajectory integrate(const Params& p, const ReducedState& s0, const IntegrationConfig& cfg = {});

struct BatchItem {
  std::optional<Trajectory> trajectory;
  std::string error;  // empty on success
};

/// Order-preserving; each item is exactly what integrate() returns for that start.
std::vector<BatchItem> batch_integrate(const Params& p, const std::vector<ReducedState>& starts,
                                       const IntegrationConfig& cfg = {}, unsigned threads = 1);

/// Catalog point within `radius` of s (nearest; ties to the lower id).
std::optional<EquilibriumId> nearest_equilibrium(const Params& p, const ReducedState& s, double radius = 1e-3);

/// Uniform draws on the open simplex via sorted-uniform spacings.
std::vector<ReducedState> random_interior_starts(std::uint64_t seed, std::size_t n);

inline constexpr std::uint64_t kDefaultSeed = 7;

}  // namespace hawkdove
