#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "treeapprox/metric_space.hpp"
#include "treeapprox/rational.hpp"

namespace treeapprox {

using PointPair = std::pair<std::size_t, std::size_t>;

struct TreeEdge {
  std::size_t u;
  std::size_t v;
  Rational weight;

  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

// Spanning tree on the points 0..order-1 of a metric space with positive
// weights. Edges are stored with u < v, sorted, so equal trees compare equal.
class WeightedTree {
 public:
  // Throws NotASpanningTree unless the edges form a spanning tree with
  // strictly positive weights.
  WeightedTree(std::size_t order, std::vector<TreeEdge> edges);

  std::size_t order() const noexcept { return order_; }
  const std::vector<TreeEdge>& edges() const noexcept { return edges_; }

  // neighbour, edge index
  const std::vector<std::pair<std::size_t, std::size_t>>& neighbours(std::size_t v) const {
    return adjacency_[v];
  }

  friend bool operator==(const WeightedTree& a, const WeightedTree& b) {
    return a.order_ == b.order_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t order_;
  std::vector<TreeEdge> edges_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
};

// Square matrix of rationals, row-major.
struct RationalMatrix {
  std::size_t n = 0;
  std::vector<Rational> values;

  const Rational& operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return values[i * n + j]; }
};

// Parent-pointer view of a tree rooted at `root`, with lowest-common-ancestor
// path queries.
class RootedTree {
 public:
  RootedTree(const WeightedTree& tree, std::size_t root);

  std::size_t root() const noexcept { return root_; }
  // parent of the root is itself
  std::size_t parent(std::size_t v) const { return parent_[v]; }
  std::size_t hops(std::size_t v) const { return hops_[v]; }
  const Rational& depth(std::size_t v) const { return depth_[v]; }
  std::size_t lca(std::size_t a, std::size_t b) const;
  // Vertices on the unique path from a to b, both included.
  std::vector<std::size_t> path(std::size_t a, std::size_t b) const;
  Rational distance(std::size_t a, std::size_t b) const;

 private:
  std::size_t root_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> hops_;
  std::vector<Rational> depth_;
};

// d_omega: sum of weights along tree paths.
RationalMatrix tree_metric(const WeightedTree& tree);

// Weights every edge by the metric distance of its endpoints. Throws
// NotASpanningTree when the edges do not span the space.
WeightedTree canonical_weights(const MetricSpace& space, std::span<const PointPair> edges);

struct DistortionReport {
  Rational expansion;    // max d_T / d
  Rational contraction;  // max d / d_T
  Rational distortion;   // expansion * contraction
  PointPair witness_expand{0, 0};
  PointPair witness_contract{0, 0};
};

// Exact extrema over all unordered pairs; ties go to the lexicographically
// smallest index pair. A single point has distortion 1.
DistortionReport distortion(const MetricSpace& space, const WeightedTree& tree);

}  // namespace treeapprox
