#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "hawkdove/linear.hpp"

namespace hawkdove {

enum class EquilibriumId { P1 = 0, P2, P3, P4, P5, P6, P7 };

inline constexpr std::size_t kNumEquilibria = 7;
inline constexpr std::array<EquilibriumId, kNumEquilibria> kEquilibria = {
    EquilibriumId::P1, EquilibriumId::P2, EquilibriumId::P3, EquilibriumId::P4,
    EquilibriumId::P5, EquilibriumId::P6, EquilibriumId::P7};

std::string_view equilibrium_name(EquilibriumId id);
bool parse_equilibrium(std::string_view name, EquilibriumId& out);
inline std::size_t index_of(EquilibriumId id) { return static_cast<std::size_t>(id); }

/// Coordinates of a catalog point; nullopt when the closed form divides by zero (c = 0).
std::optional<ReducedState> equilibrium_coords(const Params& p, EquilibriumId id);

/// Number of eigenvalues that vanish identically at this point for every (v, c):
/// one for P3, two for P6, none otherwise.
int structural_zero_count(EquilibriumId id);

/// Stability region predicates, transcribed literally as boolean functions of (v, c).
/// nullopt means no predicate claims (v, c) (on a boundary line, or a gap in the
/// predicate sets). P3 answers with the normally hyperbolic tags, P6 always with
/// NonHyperbolic.
std::optional<Classification> region_predicate_class(const Params& p, EquilibriumId id);

struct EquilibriumRecord {
  EquilibriumId id = EquilibriumId::P1;
  ReducedState coords;
  bool defined = false;
  bool in_simplex = false;
  EigenTriple eigenvalues{};
  Classification classification = Classification::Degenerate;
  std::optional<Classification> predicate_class;
  std::vector<EquilibriumId> coincides_with;

  bool agrees_with_predicate() const { return defined && predicate_class && *predicate_class == classification; }
};

std::vector<EquilibriumRecord> catalog(const Params& p);

struct RefineResult {
  ReducedState point;
  int iterations = 0;
  bool used_pseudo_inverse = false;
  double residual = 0.0;
};

/// Newton iteration on field_3d with the analytic Jacobian. Steps through a
/// singular Jacobian use the minimum-norm pseudo-inverse and set the flag.
/// Throws Error{NoConvergence} after 50 iterations, Error{SingularJacobian} when
/// the Jacobian vanishes entirely away from a root.
RefineResult refine(const Params& p, const ReducedState& guess);

inline constexpr double kRefineTolerance = 1e-13;
inline constexpr int kRefineMaxIterations = 50;

}  // namespace hawkdove
