#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "treeapprox/metric_analysis.hpp"
#include "treeapprox/metric_space.hpp"
#include "treeapprox/rational.hpp"
#include "treeapprox/weighted_tree.hpp"

namespace treeapprox {

// Chain partition at scale 2^exponent together with the choice-function data
// linking it to the level below.
struct HierarchyLevel {
  int exponent = 0;
  Partition partition;
  // per block: its representative point x[B]
  std::vector<std::size_t> representative;
  // per block: indices of the blocks one level down that it contains
  // (empty on the lowest level)
  std::vector<std::vector<std::size_t>> children;
  // per block: the child whose representative is promoted (npos on the lowest level)
  std::vector<std::size_t> designated_child;
};

struct ChainHierarchy {
  // levels[0] is the all-singleton scale 2^i_min, levels.back() the first
  // single-block scale 2^i_max
  std::vector<HierarchyLevel> levels;
  std::size_t root_point = 0;

  int min_exponent() const { return levels.front().exponent; }
  int max_exponent() const { return levels.back().exponent; }
  // depth of the whole construction, i_max - i_min
  int depth() const { return max_exponent() - min_exponent(); }
};

// Dyadic chain hierarchy with representatives anchored at `root` (default:
// smallest label). The designated child of a block is the one containing the
// root when the block does, otherwise the one containing the block's smallest
// label. Throws SinglePoint for |X| < 2.
ChainHierarchy build_hierarchy(const MetricSpace& space,
                               std::optional<std::size_t> root = std::nullopt);

// Spanning tree joining the representative of every block to the
// representatives of its non-designated children, with canonical weights.
// A single point yields the edgeless tree.
WeightedTree nagata_tree(const MetricSpace& space, std::optional<std::size_t> root = std::nullopt);
WeightedTree nagata_tree(const MetricSpace& space, const ChainHierarchy& hierarchy);

// 8 c (1 - 2^-depth): the distortion guarantee for a hierarchy of the given depth.
Rational nagata_bound(const Rational& nagata_const, int depth);

struct NagataCheck {
  // worst observed d_T(x, x[B]) / (c 2^i sum_{k<l_B} 2^-k) over blocks and members
  Rational worst_radius_ratio;
  std::size_t radius_violations = 0;
  // pairs first joined at level i with d <= 2^(i-1)
  std::size_t split_violations = 0;
};

// Re-derives the per-block radius bound and the split-distance bound on a
// built tree. Zero violations is the expected outcome for every input.
NagataCheck check_nagata_invariants(const MetricSpace& space, const ChainHierarchy& hierarchy,
                                    const WeightedTree& tree, const Rational& nagata_const);

}  // namespace treeapprox
