#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hawkdove/catalog.hpp"

namespace hawkdove {

struct GridSpec {
  double v_min = -0.3;
  double v_max = 0.3;
  double c_min = -0.3;
  double c_max = 0.3;
  std::size_t n_v = 201;
  std::size_t n_c = 201;

  void validate() const;
  // Node coordinates; a dimension of 1 collapses onto its lower bound.
  double v_at(std::size_t i) const;
  double c_at(std::size_t j) const;
  GridSpec scaled(double k) const;
};

/// Per-node tag. Undefined marks P3/P6 at c = 0.
enum class NodeTag : std::uint8_t {
  StableNode,
  UnstableNode,
  Saddle,
  NormallyHyperbolicStable,
  NormallyHyperbolicUnstable,
  NormallyHyperbolicSaddle,
  NonHyperbolic,
  Degenerate,
  Undefined,
};

std::string_view node_tag_name(NodeTag t);
bool parse_node_tag(std::string_view name, NodeTag& out);
NodeTag to_node_tag(Classification c);

class RegionMap {
 public:
  using Cell = std::array<NodeTag, kNumEquilibria>;

  RegionMap(GridSpec grid, std::vector<Cell> cells);

  const GridSpec& grid() const { return grid_; }
  // Row-major: v index outer, c index inner.
  const Cell& cell(std::size_t iv, std::size_t ic) const { return cells_.at(iv * grid_.n_c + ic); }
  NodeTag tag(std::size_t iv, std::size_t ic, EquilibriumId id) const { return cell(iv, ic)[index_of(id)]; }
  std::size_t size() const { return cells_.size(); }
  const std::vector<Cell>& cells() const { return cells_; }

  bool operator==(const RegionMap& other) const { return cells_ == other.cells_; }

 private:
  GridSpec grid_;
  std::vector<Cell> cells_;
};

/// Classify every catalog point at every grid node. `threads` = 0 picks the
/// hardware concurrency; the result does not depend on it.
RegionMap scan(const GridSpec& grid, unsigned threads = 1);

enum class LineId { VeqC, Ceq0, Veq0, Ceq2V, Unexplained };

std::string_view line_name(LineId id);

struct Transition {
  EquilibriumId point;
  NodeTag from;
  NodeTag to;
  double v0, c0, v1, c1;
};

struct BifurcationLine {
  LineId id;
  std::vector<Transition> affected;
};

/// Walk every horizontally and vertically adjacent node pair; attribute each tag
/// change to the nearest of the four lines the segment touches (ties go to all),
/// or to Unexplained if the segment touches none. Only lines with at least one
/// transition are returned, in LineId order.
std::vector<BifurcationLine> detect_transitions(const RegionMap& m);

/// Signed offset of (v, c) from a line, normalised to perpendicular distance.
double line_offset(LineId id, double v, double c);

struct LinearizedSystem {
  std::array<std::array<double, 3>, 3> matrix{};
  std::array<double, 3> affine{};
  std::string note;
};

/// Reference local linear system around a catalog point, as tabulated for the bifurcation
/// discussion. Throws Error{UndefinedPoint} for P3/P6 at c = 0.
LinearizedSystem linearized_field(const Params& p, EquilibriumId id);

}  // namespace hawkdove
