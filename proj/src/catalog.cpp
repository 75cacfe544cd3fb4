#include "hawkdove/catalog.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "hawkdove/error.hpp"

namespace hawkdove {

std::string_view equilibrium_name(EquilibriumId id) {
  static constexpr std::array<std::string_view, kNumEquilibria> names = {"P1", "P2", "P3", "P4",
                                                                          "P5", "P6", "P7"};
  return names[index_of(id)];
}

bool parse_equilibrium(std::string_view name, EquilibriumId& out) {
  for (auto id : kEquilibria) {
    if (equilibrium_name(id) == name) {
      out = id;
      return true;
    }
  }
  return false;
}

std::optional<ReducedState> equilibrium_coords(const Params& p, EquilibriumId id) {
  switch (id) {
    case EquilibriumId::P1: return ReducedState{0.0, 0.0, 1.0};
    case EquilibriumId::P2: return ReducedState{0.0, 0.5, 0.5};
    case EquilibriumId::P3:
      if (p.c == 0.0) return std::nullopt;
      return ReducedState{0.0, p.v / p.c, p.v / p.c};
    case EquilibriumId::P4: return ReducedState{0.0, 1.0, 0.0};
    case EquilibriumId::P5: return ReducedState{1.0, 0.0, 0.0};
    case EquilibriumId::P6:
      if (p.c == 0.0) return std::nullopt;
      return ReducedState{p.v / p.c, 0.0, 0.0};
    case EquilibriumId::P7: return ReducedState{0.0, 0.0, 0.0};
  }
  return std::nullopt;
}

int structural_zero_count(EquilibriumId id) {
  switch (id) {
    case EquilibriumId::P3: return 1;
    case EquilibriumId::P6: return 2;
    default: return 0;
  }
}

std::optional<Classification> region_predicate_class(const Params& p, EquilibriumId id) {
  const double v = p.v;
  const double c = p.c;
  using C = Classification;
  switch (id) {
    case EquilibriumId::P1:
    case EquilibriumId::P4:
      if (v > 0 && c > v) return C::StableNode;
      if (v < 0 && c < v) return C::UnstableNode;
      if ((v < 0 && v < c && c < 0) || (v < 0 && c > 0) || (v > 0 && c < 0) || (v > 0 && 0 < c && c < v))
        return C::Saddle;
      return std::nullopt;
    case EquilibriumId::P2:
      if ((v <= 0 && c < 2 * v) || (v > 0 && c < 0) || (v > 0 && 0 < c && c < 2 * v) ||
          (v < 0 && 2 * v < c && c < 0))
        return C::Saddle;
      return std::nullopt;
    case EquilibriumId::P3:
      if (c == 0) return std::nullopt;
      if (v < 0 && 2 * v < c && c < 0) return C::NormallyHyperbolicStable;
      if (v > 0 && 0 < c && c < 2 * v) return C::NormallyHyperbolicUnstable;
      if ((v < 0 && (c < 2 * v || c > 0)) || (v > 0 && (c < 0 || c > 2 * v))) return C::NormallyHyperbolicSaddle;
      return std::nullopt;
    case EquilibriumId::P5:
      if (c < v) return C::StableNode;
      if (c > v) return C::UnstableNode;
      return std::nullopt;
    case EquilibriumId::P6:
      if (c == 0) return std::nullopt;
      return C::NonHyperbolic;
    case EquilibriumId::P7:
      if (v < 0) return C::StableNode;
      if (v > 0) return C::UnstableNode;
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<EquilibriumRecord> catalog(const Params& p) {
  std::vector<EquilibriumRecord> out;
  out.reserve(kNumEquilibria);
  for (auto id : kEquilibria) {
    EquilibriumRecord r;
    r.id = id;
    r.predicate_class = region_predicate_class(p, id);
    if (auto coords = equilibrium_coords(p, id)) {
      r.defined = true;
      r.coords = *coords;
      r.in_simplex = coords->in_simplex();
      r.eigenvalues = eigenvalues(jacobian(p, *coords));
      r.classification = classify_equilibrium(r.eigenvalues, structural_zero_count(id));
    }
    out.push_back(std::move(r));
  }
  for (auto& a : out) {
    if (!a.defined) continue;
    for (const auto& b : out) {
      if (&a == &b || !b.defined) continue;
      const double d = std::max({std::abs(a.coords.x - b.coords.x), std::abs(a.coords.y - b.coords.y),
                                 std::abs(a.coords.z - b.coords.z)});
      if (d <= 1e-12) a.coincides_with.push_back(b.id);
    }
  }
  return out;
}

RefineResult refine(const Params& p, const ReducedState& guess) {
  RefineResult r;
  r.point = guess;
  Field3 f = field_3d(p, r.point);
  r.residual = max_abs(f);
  while (r.residual >= kRefineTolerance) {
    if (r.iterations >= kRefineMaxIterations) {
      throw Error(ErrorCode::NoConvergence, "Newton refinement did not converge in 50 iterations");
    }
    const Jacobian3 j = jacobian(p, r.point);
    Eigen::Matrix3d jm;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) jm(i, k) = j[i][k];
    const Eigen::Vector3d rhs(f[0], f[1], f[2]);

    Eigen::JacobiSVD<Eigen::Matrix3d> svd(jm, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0 || !std::isfinite(sv(0))) {
      throw Error(ErrorCode::SingularJacobian, "Jacobian vanishes at a non-root");
    }
    Eigen::Vector3d step;
    if (sv(2) > 1e-10 * sv(0)) {
      step = jm.partialPivLu().solve(rhs);
    } else {
      svd.setThreshold(1e-10);
      step = svd.solve(rhs);
      r.used_pseudo_inverse = true;
    }
    r.point = {r.point.x - step(0), r.point.y - step(1), r.point.z - step(2)};
    ++r.iterations;
    f = field_3d(p, r.point);
    r.residual = max_abs(f);
    if (!std::isfinite(r.residual)) {
      throw Error(ErrorCode::NoConvergence, "Newton refinement diverged");
    }
  }
  return r;
}

}  // namespace hawkdove
