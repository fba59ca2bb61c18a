#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "treeapprox/metric_space.hpp"
#include "treeapprox/rational.hpp"
#include "treeapprox/weighted_tree.hpp"

namespace treeapprox {

struct RTreeEdge {
  std::size_t a;
  std::size_t b;
  Rational length;
};

// Finite geometric tree: nodes are either embedded input points or Steiner
// branch points, edges carry positive lengths.
class RTree {
 public:
  static constexpr std::size_t steiner = std::numeric_limits<std::size_t>::max();

  // node_point[v] is the input point sitting at node v, or `steiner`.
  // Throws NotASpanningTree if the edges do not form a tree on the nodes.
  RTree(std::vector<std::size_t> node_point, std::vector<RTreeEdge> edges, std::size_t point_count);

  std::size_t node_count() const noexcept { return node_point_.size(); }
  std::size_t point_count() const noexcept { return embed_.size(); }
  const std::vector<RTreeEdge>& edges() const noexcept { return edges_; }

  bool is_steiner(std::size_t node) const { return node_point_[node] == steiner; }
  std::size_t point_at(std::size_t node) const { return node_point_[node]; }
  std::size_t node_of(std::size_t point) const { return embed_[point]; }

  // neighbour, edge index
  const std::vector<std::pair<std::size_t, std::size_t>>& neighbours(std::size_t node) const {
    return adjacency_[node];
  }
  std::size_t degree(std::size_t node) const { return adjacency_[node].size(); }

  std::vector<Rational> distances_from(std::size_t node) const;

 private:
  std::vector<std::size_t> node_point_;
  std::vector<RTreeEdge> edges_;
  std::vector<std::size_t> embed_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
};

// A point of the geometric realization: `offset` is measured from
// edges()[edge].a and lies in [0, length].
struct TreeLocation {
  std::size_t edge = 0;
  Rational offset;

  friend bool operator==(const TreeLocation&, const TreeLocation&) = default;
};

// All-pairs node distances, for repeated location queries.
class RTreeMetric {
 public:
  explicit RTreeMetric(const RTree& tree);

  const Rational& nodes(std::size_t u, std::size_t v) const { return dist_[u * n_ + v]; }
  Rational between(const TreeLocation& x, const TreeLocation& y) const;
  // distance from a location to a node
  Rational to_node(const TreeLocation& x, std::size_t node) const;

  const RTree& tree() const noexcept { return *tree_; }

 private:
  const RTree* tree_;
  std::size_t n_;
  std::vector<Rational> dist_;
};

// Location of a node, expressed on its smallest-index incident edge.
TreeLocation node_location(const RTree& tree, std::size_t node);

// Incremental additive-tree construction from the smallest label: each new
// point attaches at its largest Gromov product along the path to the first
// maximizing point. Every realized distance is checked exactly; on mismatch
// throws NotZeroHyperbolic with a violating quadruple as witness.
RTree realize_rtree(const MetricSpace& space);

// Geometric copy of a spanning tree on the points: no Steiner nodes, node i
// is point i, edge lengths are the weights.
RTree realize_tree(const WeightedTree& tree);

// A connected component of the realization minus the embedded points.
struct ComplementComponent {
  std::vector<std::size_t> edges;     // open edges, ascending
  std::vector<std::size_t> steiner;   // Steiner nodes, ascending
  std::vector<std::size_t> boundary;  // input points touching it, ascending
};

// Components ordered by smallest edge index.
std::vector<ComplementComponent> complement_components(const RTree& tree);

// Center of the component (midpoint of its diametral path). Node centers are
// reported on the smallest incident edge index of the component.
TreeLocation component_root(const RTree& tree, const ComplementComponent& component);

}  // namespace treeapprox
