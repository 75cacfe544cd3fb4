#include "hawkdove/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "hawkdove/error.hpp"

namespace hawkdove {

void GridSpec::validate() const {
  if (!(std::isfinite(v_min) && std::isfinite(v_max) && std::isfinite(c_min) && std::isfinite(c_max))) {
    throw Error(ErrorCode::InvalidArgument, "grid bounds must be finite");
  }
  if (v_min > v_max || c_min > c_max) throw Error(ErrorCode::InvalidArgument, "grid bounds are inverted");
  if (n_v < 1 || n_c < 1) throw Error(ErrorCode::InvalidArgument, "grid dimensions must be positive");
}

namespace {

double node(double lo, double hi, std::size_t n, std::size_t i) {
  if (n == 1) return lo;
  const double k = static_cast<double>(n - 1);
  // Weighted form keeps symmetric grids exactly symmetric (and hits 0 exactly).
  return (lo * static_cast<double>(n - 1 - i) + hi * static_cast<double>(i)) / k;
}

}  // namespace

double GridSpec::v_at(std::size_t i) const { return node(v_min, v_max, n_v, i); }
double GridSpec::c_at(std::size_t j) const { return node(c_min, c_max, n_c, j); }

GridSpec GridSpec::scaled(double k) const {
  GridSpec g = *this;
  g.v_min *= k;
  g.v_max *= k;
  g.c_min *= k;
  g.c_max *= k;
  return g;
}

std::string_view node_tag_name(NodeTag t) {
  if (t == NodeTag::Undefined) return "Undefined";
  return classification_name(static_cast<Classification>(t));
}

bool parse_node_tag(std::string_view name, NodeTag& out) {
  if (name == "Undefined") {
    out = NodeTag::Undefined;
    return true;
  }
  Classification c;
  if (!parse_classification(name, c)) return false;
  out = to_node_tag(c);
  return true;
}

NodeTag to_node_tag(Classification c) { return static_cast<NodeTag>(c); }

RegionMap::RegionMap(GridSpec grid, std::vector<Cell> cells) : grid_(grid), cells_(std::move(cells)) {
  if (cells_.size() != grid_.n_v * grid_.n_c) {
    throw Error(ErrorCode::InvalidArgument, "region map size does not match its grid");
  }
}

namespace {

RegionMap::Cell classify_node(const Params& p) {
  RegionMap::Cell cell{};
  const auto records = catalog(p);
  for (const auto& r : records) {
    cell[index_of(r.id)] = r.defined ? to_node_tag(r.classification) : NodeTag::Undefined;
  }
  return cell;
}

}  // namespace

RegionMap scan(const GridSpec& grid, unsigned threads) {
  grid.validate();
  const std::size_t total = grid.n_v * grid.n_c;
  std::vector<RegionMap::Cell> cells(total);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const std::size_t iv = k / grid.n_c;
      const std::size_t ic = k % grid.n_c;
      cells[k] = classify_node({grid.v_at(iv), grid.c_at(ic)});
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    work(0, total);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(total, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }
  return RegionMap(grid, std::move(cells));
}

std::string_view line_name(LineId id) {
  switch (id) {
    case LineId::VeqC: return "VeqC";
    case LineId::Ceq0: return "Ceq0";
    case LineId::Veq0: return "Veq0";
    case LineId::Ceq2V: return "Ceq2V";
    case LineId::Unexplained: return "Unexplained";
  }
  return "?";
}

double line_offset(LineId id, double v, double c) {
  switch (id) {
    case LineId::VeqC: return (v - c) / std::sqrt(2.0);
    case LineId::Ceq0: return c;
    case LineId::Veq0: return v;
    case LineId::Ceq2V: return (c - 2.0 * v) / std::sqrt(5.0);
    case LineId::Unexplained: break;
  }
  return std::numeric_limits<double>::infinity();
}

std::vector<BifurcationLine> detect_transitions(const RegionMap& m) {
  constexpr std::array<LineId, 4> lines = {LineId::VeqC, LineId::Ceq0, LineId::Veq0, LineId::Ceq2V};
  const GridSpec& g = m.grid();
  const double extent = std::max({std::abs(g.v_min), std::abs(g.v_max), std::abs(g.c_min), std::abs(g.c_max), 1e-300});
  const double touch_tol = 1e-9 * extent;

  std::array<std::vector<Transition>, 5> buckets;

  auto attribute = [&](const Transition& t) {
    double best = std::numeric_limits<double>::infinity();
    std::array<double, 4> dist;
    for (std::size_t k = 0; k < lines.size(); ++k) {
      const double s0 = line_offset(lines[k], t.v0, t.c0);
      const double s1 = line_offset(lines[k], t.v1, t.c1);
      const bool touches = s0 * s1 <= 0.0 || std::min(std::abs(s0), std::abs(s1)) <= touch_tol;
      dist[k] = touches ? std::abs(0.5 * (s0 + s1)) : std::numeric_limits<double>::infinity();
      best = std::min(best, dist[k]);
    }
    if (!std::isfinite(best)) {
      buckets[static_cast<std::size_t>(LineId::Unexplained)].push_back(t);
      return;
    }
    for (std::size_t k = 0; k < lines.size(); ++k) {
      if (dist[k] <= best + touch_tol) buckets[static_cast<std::size_t>(lines[k])].push_back(t);
    }
  };

  auto compare = [&](std::size_t iv0, std::size_t ic0, std::size_t iv1, std::size_t ic1) {
    const auto& a = m.cell(iv0, ic0);
    const auto& b = m.cell(iv1, ic1);
    for (auto id : kEquilibria) {
      const std::size_t k = index_of(id);
      if (a[k] == b[k]) continue;
      attribute({id, a[k], b[k], g.v_at(iv0), g.c_at(ic0), g.v_at(iv1), g.c_at(ic1)});
    }
  };

  for (std::size_t iv = 0; iv < g.n_v; ++iv) {
    for (std::size_t ic = 0; ic < g.n_c; ++ic) {
      if (ic + 1 < g.n_c) compare(iv, ic, iv, ic + 1);
      if (iv + 1 < g.n_v) compare(iv, ic, iv + 1, ic);
    }
  }

  std::vector<BifurcationLine> out;
  for (std::size_t k = 0; k < buckets.size(); ++k) {
    if (!buckets[k].empty()) out.push_back({static_cast<LineId>(k), std::move(buckets[k])});
  }
  return out;
}

LinearizedSystem linearized_field(const Params& p, EquilibriumId id) {
  const double v = p.v;
  const double c = p.c;
  LinearizedSystem s;
  auto& a = s.matrix;
  switch (id) {
    case EquilibriumId::P1:
      a = {{{(v - c) / 4, 0, 0}, {0, -c / 4, 0}, {(c - 2 * v) / 4, (c - v) / 4, -v / 4}}};
      break;
    case EquilibriumId::P2:
      a = {{{(2 * v - c) / 8, 0, 0}, {(c - 2 * v) / 8, (c - v) / 8, -v / 8}, {(c - 2 * v) / 8, -v / 8, (c - v) / 8}}};
      break;
    case EquilibriumId::P3: {
      if (c == 0.0) throw Error(ErrorCode::UndefinedPoint, "P3 is undefined at c = 0");
      const double coupling = -v * (c - 2 * v) / (4 * c);
      const double diag = v * v / (4 * c);
      const double cross = v * (v - c) / (4 * c);
      a = {{{0, 0, 0}, {coupling, diag, cross}, {coupling, cross, diag}}};
      break;
    }
    case EquilibriumId::P4:
      a = {{{(v - c) / 4, 0, 0}, {(c - 2 * v) / 4, -v / 4, (c - v) / 4}, {0, 0, -c / 4}}};
      break;
    case EquilibriumId::P5:
      a = {{{(c - v) / 2, (c - v) / 4, (c - v) / 4}, {0, (c - v) / 4, 0}, {0, 0, (c - v) / 4}}};
      break;
    case EquilibriumId::P6: {
      if (c == 0.0) throw Error(ErrorCode::UndefinedPoint, "P6 is undefined at c = 0");
      const double k = v * (v - c) / c;
      a = {{{k / 2, k / 4, 0}, {0, 0, 0}, {0, 0, 0}}};
      s.affine = {k / 4, 0, 0};
      s.note = "tabulated x-row ends in a constant v(v-c)/(4c) where the Jacobian has the z-coefficient v(v-c)/(4c)";
      break;
    }
    case EquilibriumId::P7:
      a = {{{v / 2, 0, 0}, {0, v / 4, 0}, {0, 0, v / 4}}};
      break;
  }
  return s;
}

}  // namespace hawkdove
