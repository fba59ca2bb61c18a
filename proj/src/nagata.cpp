#include "treeapprox/nagata.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "treeapprox/detail/distance_view.hpp"
#include "treeapprox/error.hpp"

namespace treeapprox {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Children of a block are chain components of the level below, so any two
// points in different children are more than the lower scale apart.
template <class View>
bool children_separated(const View& d, const HierarchyLevel& lower, const HierarchyLevel& upper,
                        const Rational& lower_scale) {
  using V = typename View::value_type;
  for (const auto& children : upper.children) {
    for (std::size_t a = 0; a < children.size(); ++a)
      for (std::size_t b = a + 1; b < children.size(); ++b)
        for (std::size_t x : lower.partition.blocks[children[a]])
          for (std::size_t y : lower.partition.blocks[children[b]]) {
            V dxy = d(x, y);
            if (!(d.to_rational(dxy) > lower_scale)) return false;
          }
  }
  return true;
}

}  // namespace

ChainHierarchy build_hierarchy(const MetricSpace& space, std::optional<std::size_t> root) {
  const std::size_t n = space.size();
  if (n < 2) throw Error(ErrorCode::SinglePoint, "chain hierarchy needs at least two points");
  if (root && *root >= n) throw Error(ErrorCode::OutOfRange, "root index out of range");

  ChainHierarchy h;
  h.root_point = root.value_or(space.label_order().front());

  HierarchyLevel bottom;
  bottom.exponent = floor_log2_strict(space.separation());
  bottom.partition = chain_components(space, pow2(bottom.exponent));
  if (bottom.partition.blocks.size() != n)
    throw Error(ErrorCode::BoundViolation, "lowest scale is not all singletons");
  bottom.representative.resize(n);
  bottom.children.assign(n, {});
  bottom.designated_child.assign(n, npos);
  for (std::size_t b = 0; b < n; ++b) bottom.representative[b] = bottom.partition.blocks[b][0];
  h.levels.push_back(std::move(bottom));

  while (h.levels.back().partition.blocks.size() > 1) {
    const HierarchyLevel& lower = h.levels.back();
    HierarchyLevel level;
    level.exponent = lower.exponent + 1;
    level.partition = chain_components(space, pow2(level.exponent));
    const std::size_t blocks = level.partition.blocks.size();
    level.children.assign(blocks, {});
    for (std::size_t c = 0; c < lower.partition.blocks.size(); ++c)
      level.children[level.partition.block_of[lower.partition.blocks[c][0]]].push_back(c);

    level.representative.resize(blocks);
    level.designated_child.resize(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
      const auto& members = level.partition.blocks[b];
      std::size_t anchor;
      if (level.partition.block_of[h.root_point] == b) {
        anchor = h.root_point;
      } else {
        anchor = *std::min_element(members.begin(), members.end(), [&](std::size_t x, std::size_t y) {
          return space.label_rank(x) < space.label_rank(y);
        });
      }
      const std::size_t child = lower.partition.block_of[anchor];
      level.designated_child[b] = child;
      level.representative[b] = lower.representative[child];
    }

    const Rational lower_scale = pow2(lower.exponent);
    bool separated = detail::with_view(
        space, [&](const auto& d) { return children_separated(d, lower, level, lower_scale); });
    if (!separated)
      throw Error(ErrorCode::BoundViolation,
                  "points split at scale 2^" + std::to_string(level.exponent) +
                      " are not more than 2^" + std::to_string(lower.exponent) + " apart");
    h.levels.push_back(std::move(level));
  }
  return h;
}

WeightedTree nagata_tree(const MetricSpace& space, const ChainHierarchy& hierarchy) {
  std::vector<PointPair> edges;
  for (std::size_t l = 1; l < hierarchy.levels.size(); ++l) {
    const auto& level = hierarchy.levels[l];
    const auto& lower = hierarchy.levels[l - 1];
    for (std::size_t b = 0; b < level.partition.blocks.size(); ++b)
      for (std::size_t c : level.children[b]) {
        if (c == level.designated_child[b]) continue;
        edges.push_back({level.representative[b], lower.representative[c]});
      }
  }
  return canonical_weights(space, edges);
}

WeightedTree nagata_tree(const MetricSpace& space, std::optional<std::size_t> root) {
  if (space.size() == 1) return WeightedTree(1, {});
  return nagata_tree(space, build_hierarchy(space, root));
}

Rational nagata_bound(const Rational& nagata_const, int depth) {
  return 8 * nagata_const * (1 - pow2(-depth));
}

NagataCheck check_nagata_invariants(const MetricSpace& space, const ChainHierarchy& hierarchy,
                                    const WeightedTree& tree, const Rational& nagata_const) {
  NagataCheck check;
  check.worst_radius_ratio = 0;
  RootedTree rooted(tree, hierarchy.root_point);
  const int i_min = hierarchy.min_exponent();
  for (std::size_t l = 0; l < hierarchy.levels.size(); ++l) {
    const auto& level = hierarchy.levels[l];
    const int below = level.exponent - i_min;
    // c 2^i sum_{k=0}^{below-1} 2^-k = c 2^i (2 - 2^(1-below))
    const Rational bound =
        below == 0 ? Rational(0) : Rational(nagata_const * pow2(level.exponent) * (2 - pow2(1 - below)));
    for (std::size_t b = 0; b < level.partition.blocks.size(); ++b) {
      const std::size_t rep = level.representative[b];
      for (std::size_t x : level.partition.blocks[b]) {
        Rational dt = rooted.distance(x, rep);
        if (dt > bound) ++check.radius_violations;
        if (bound > 0) {
          Rational ratio = dt / bound;
          if (ratio > check.worst_radius_ratio) check.worst_radius_ratio = ratio;
        }
      }
    }
    if (l > 0) {
      const auto& lower = hierarchy.levels[l - 1];
      const Rational lower_scale = pow2(lower.exponent);
      for (const auto& children : level.children)
        for (std::size_t a = 0; a < children.size(); ++a)
          for (std::size_t c = a + 1; c < children.size(); ++c)
            for (std::size_t x : lower.partition.blocks[children[a]])
              for (std::size_t y : lower.partition.blocks[children[c]])
                if (space(x, y) <= lower_scale) ++check.split_violations;
    }
  }
  return check;
}

}  // namespace treeapprox
