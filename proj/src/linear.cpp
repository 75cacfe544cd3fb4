#include "hawkdove/linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hawkdove {

namespace {

// Pairs closer than this (relative to the largest root) are treated as a double root.
constexpr double kPairCluster = 1e-7;
constexpr double kTripleCluster = 1e-4;

struct Monic {
  // lambda^3 + a lambda^2 + b lambda + d
  double a, b, d;

  Eigenvalue eval(Eigenvalue l) const { return ((l + a) * l + b) * l + d; }
  Eigenvalue deriv(Eigenvalue l) const { return (3.0 * l + 2.0 * a) * l + b; }
};

Monic monic_charpoly(const Jacobian3& j) {
  const double minors = j[0][0] * j[1][1] - j[0][1] * j[1][0] + j[0][0] * j[2][2] -
                        j[0][2] * j[2][0] + j[1][1] * j[2][2] - j[1][2] * j[2][1];
  return {-trace(j), minors, -determinant(j)};
}

std::array<Eigenvalue, 3> solve_cubic(const Monic& m) {
  const double shift = m.a / 3.0;
  const double p = m.b - m.a * m.a / 3.0;
  const double q = 2.0 * m.a * m.a * m.a / 27.0 - m.a * m.b / 3.0 + m.d;
  const double disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);

  std::array<Eigenvalue, 3> t;
  if (disc <= 0.0) {
    if (p >= 0.0) {
      const double r = std::cbrt(-q);
      t = {r, r, r};
    } else {
      const double r = 2.0 * std::sqrt(-p / 3.0);
      const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
      const double phi = std::acos(arg) / 3.0;
      for (int k = 0; k < 3; ++k) t[k] = r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
    }
  } else {
    const double big = -std::copysign(std::cbrt(std::abs(q) / 2.0 + std::sqrt(disc)), q);
    const double small = big != 0.0 ? -p / (3.0 * big) : 0.0;
    const double re = -(big + small) / 2.0;
    const double im = std::sqrt(3.0) / 2.0 * (big - small);
    t = {Eigenvalue(big + small, 0.0), Eigenvalue(re, im), Eigenvalue(re, -im)};
  }
  for (auto& r : t) r -= shift;
  return t;
}

// One Newton step per root, kept only if it lowers the residual and stays closer
// to its own root than to any sibling (near a double root the step can jump).
void newton_polish(const Monic& m, std::array<Eigenvalue, 3>& roots) {
  const auto start = roots;
  for (int i = 0; i < 3; ++i) {
    const Eigenvalue root = start[i];
    const Eigenvalue d = m.deriv(root);
    if (d == 0.0) continue;
    const Eigenvalue step = m.eval(root) / d;
    double gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k)
      if (k != i) gap = std::min(gap, std::abs(start[k] - root));
    if (!(std::abs(step) < 0.5 * gap)) continue;
    const Eigenvalue next = root - step;
    if (std::abs(m.eval(next)) < std::abs(m.eval(root))) {
      roots[i] = root.imag() == 0.0 ? Eigenvalue(next.real(), 0.0) : next;
    }
  }
}

// Root of p' nearest `target`; p' = 3 l^2 + 2 a l + b.
double derivative_root_near(const Monic& m, double target) {
  const double disc = std::max(0.0, m.a * m.a - 3.0 * m.b);
  const double qq = -(m.a + std::copysign(std::sqrt(disc), m.a));
  if (qq == 0.0) return -m.a / 3.0;
  const double r1 = qq / 3.0;
  const double r2 = m.b / qq;
  return std::abs(r1 - target) <= std::abs(r2 - target) ? r1 : r2;
}

void snap_clusters(const Monic& m, std::array<Eigenvalue, 3>& roots) {
  double scale = 0.0;
  for (const auto& r : roots) scale = std::max(scale, std::abs(r));
  if (scale == 0.0) return;

  auto sep = [&](int i, int k) { return std::abs(roots[i] - roots[k]); };
  if (sep(0, 1) <= kTripleCluster * scale && sep(0, 2) <= kTripleCluster * scale &&
      sep(1, 2) <= kTripleCluster * scale) {
    const double r = -m.a / 3.0;
    roots = {r, r, r};
    return;
  }
  int bi = 0, bk = 1;
  for (auto [i, k] : {std::pair{0, 2}, std::pair{1, 2}}) {
    if (sep(i, k) < sep(bi, bk)) bi = i, bk = k;
  }
  if (sep(bi, bk) > kPairCluster * scale) return;
  const double mid = 0.5 * (roots[bi].real() + roots[bk].real());
  const double r = derivative_root_near(m, mid);
  if (std::abs(r - mid) <= kPairCluster * scale) {
    roots[bi] = r;
    roots[bk] = r;
  }
}

}  // namespace

double EigenTriple::max_abs() const {
  double m = 0.0;
  for (const auto& l : values) m = std::max(m, std::abs(l));
  return m;
}

std::string_view classification_name(Classification c) {
  switch (c) {
    case Classification::StableNode: return "StableNode";
    case Classification::UnstableNode: return "UnstableNode";
    case Classification::Saddle: return "Saddle";
    case Classification::NormallyHyperbolicStable: return "NormallyHyperbolicStable";
    case Classification::NormallyHyperbolicUnstable: return "NormallyHyperbolicUnstable";
    case Classification::NormallyHyperbolicSaddle: return "NormallyHyperbolicSaddle";
    case Classification::NonHyperbolic: return "NonHyperbolic";
    case Classification::Degenerate: return "Degenerate";
  }
  return "?";
}

bool parse_classification(std::string_view name, Classification& out) {
  for (int i = 0; i <= static_cast<int>(Classification::Degenerate); ++i) {
    const auto c = static_cast<Classification>(i);
    if (classification_name(c) == name) {
      out = c;
      return true;
    }
  }
  return false;
}

Jacobian3 jacobian(const Params& p, const ReducedState& s) {
  const double v = p.v;
  const double c = p.c;
  const auto [x, y, z] = s;
  Jacobian3 j;
  j[0][0] = 0.25 * (c * (6 * x * x + 4 * x * (y + z - 1) + 2 * y * z - y - z) - v * (4 * x + y + z - 2));
  j[0][1] = 0.25 * x * (c * (2 * x + 2 * z - 1) - v);
  j[0][2] = 0.25 * x * (c * (2 * x + 2 * y - 1) - v);
  j[1][0] = 0.25 * y * (c * (4 * x + 2 * y + 2 * z - 1) - 2 * v);
  j[1][1] = 0.25 * (c * (2 * x + 4 * y - 1) * (x + z) - v * (2 * x + 2 * y + z - 1));
  j[1][2] = 0.25 * y * (c * (2 * x + 2 * y - 1) - v);
  j[2][0] = 0.25 * z * (c * (4 * x + 2 * y + 2 * z - 1) - 2 * v);
  j[2][1] = 0.25 * z * (c * (2 * x + 2 * z - 1) - v);
  j[2][2] = 0.25 * (c * (x + y) * (2 * x + 4 * z - 1) - v * (2 * x + y + 2 * z - 1));
  return j;
}

Jacobian3 jacobian_fd(const Params& p, const ReducedState& s) {
  const auto base = s.as_array();
  const double norm = std::sqrt(base[0] * base[0] + base[1] * base[1] + base[2] * base[2]);
  const double h = 1e-6 * std::max(1.0, norm);
  Jacobian3 j{};
  for (std::size_t col = 0; col < 3; ++col) {
    auto plus = base;
    auto minus = base;
    plus[col] += h;
    minus[col] -= h;
    const Field3 fp = field_3d(p, ReducedState::from_array(plus));
    const Field3 fm = field_3d(p, ReducedState::from_array(minus));
    for (std::size_t row = 0; row < 3; ++row) j[row][col] = (fp[row] - fm[row]) / (2.0 * h);
  }
  return j;
}

double trace(const Jacobian3& j) { return j[0][0] + j[1][1] + j[2][2]; }

double determinant(const Jacobian3& j) {
  return j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) -
         j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0]) +
         j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
}

double norm_inf(const Jacobian3& j) {
  double n = 0.0;
  for (const auto& row : j) n = std::max(n, std::abs(row[0]) + std::abs(row[1]) + std::abs(row[2]));
  return n;
}

Eigenvalue charpoly(const Jacobian3& j, Eigenvalue lambda) { return monic_charpoly(j).eval(lambda); }

EigenTriple eigenvalues(const Jacobian3& j) {
  const Monic m = monic_charpoly(j);
  auto roots = solve_cubic(m);
  newton_polish(m, roots);
  snap_clusters(m, roots);
  std::sort(roots.begin(), roots.end(), [](const Eigenvalue& l, const Eigenvalue& r) {
    if (l.real() != r.real()) return l.real() > r.real();
    return l.imag() > r.imag();
  });
  return {roots};
}

double eigen_tolerance(const EigenTriple& e) { return 1e-9 * (1.0 + e.max_abs()); }

int zero_count(const EigenTriple& e) {
  const double tol = eigen_tolerance(e);
  int n = 0;
  for (const auto& l : e.values) n += std::abs(l.real()) <= tol ? 1 : 0;
  return n;
}

Classification classify(const EigenTriple& e) {
  const double tol = eigen_tolerance(e);
  int zeros = 0, neg = 0, pos = 0;
  for (const auto& l : e.values) {
    if (std::abs(l.real()) <= tol) ++zeros;
    else if (l.real() < 0.0) ++neg;
    else ++pos;
  }
  if (zeros >= 2) return Classification::NonHyperbolic;
  if (zeros == 1) {
    if (pos == 0) return Classification::NormallyHyperbolicStable;
    if (neg == 0) return Classification::NormallyHyperbolicUnstable;
    return Classification::NormallyHyperbolicSaddle;
  }
  if (pos == 0) return Classification::StableNode;
  if (neg == 0) return Classification::UnstableNode;
  return Classification::Saddle;
}

Classification classify_equilibrium(const EigenTriple& e, int structural_zeros) {
  if (zero_count(e) > structural_zeros) return Classification::Degenerate;
  return classify(e);
}

}  // namespace hawkdove
