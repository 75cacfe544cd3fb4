#pragma once

#include <array>
#include <complex>
#include <string_view>

#include "hawkdove/field.hpp"

namespace hawkdove {

using Jacobian3 = std::array<std::array<double, 3>, 3>;
using Eigenvalue = std::complex<double>;

/// Three eigenvalues ordered by descending real part, ties by descending imaginary part.
struct EigenTriple {
  std::array<Eigenvalue, 3> values;

  const Eigenvalue& operator[](std::size_t i) const { return values[i]; }
  double max_abs() const;
};

enum class Classification {
  StableNode,
  UnstableNode,
  Saddle,
  NormallyHyperbolicStable,
  NormallyHyperbolicUnstable,
  NormallyHyperbolicSaddle,
  NonHyperbolic,
  Degenerate,
};

std::string_view classification_name(Classification c);
bool parse_classification(std::string_view name, Classification& out);

/// Analytic Jacobian of field_3d.
Jacobian3 jacobian(const Params& p, const ReducedState& s);

/// Central-difference Jacobian of field_3d, step h = 1e-6 * max(1, |s|).
Jacobian3 jacobian_fd(const Params& p, const ReducedState& s);

/// Roots of det(J - lambda I) via the closed-form cubic, Newton-polished. Clusters
/// of (numerically) repeated roots are snapped onto the matching root of the
/// derivative polynomial, where they are simple and well conditioned.
EigenTriple eigenvalues(const Jacobian3& j);

/// Characteristic polynomial det(J - lambda I) * (-1), i.e. monic lambda^3 + ...
Eigenvalue charpoly(const Jacobian3& j, Eigenvalue lambda);

double trace(const Jacobian3& j);
double determinant(const Jacobian3& j);
double norm_inf(const Jacobian3& j);

/// Zero threshold on real parts: 1e-9 * (1 + max |lambda|).
double eigen_tolerance(const EigenTriple& e);
int zero_count(const EigenTriple& e);

Classification classify(const EigenTriple& e);

/// Like classify, but an equilibrium with more near-zero eigenvalues than its
/// structural count sits on a stability boundary and is tagged Degenerate.
Classification classify_equilibrium(const EigenTriple& e, int structural_zeros);

}  // namespace hawkdove
