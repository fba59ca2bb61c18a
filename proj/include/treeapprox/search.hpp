#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "treeapprox/metric_space.hpp"
#include "treeapprox/rational.hpp"
#include "treeapprox/weighted_tree.hpp"

namespace treeapprox {

enum class SearchMethod { Exhaustive, BranchAndBound, Local };

std::string_view method_name(SearchMethod method);

struct SearchResult {
  WeightedTree best_tree{1, {}};
  Rational best_distortion;
  Rational lower_bound;
  SearchMethod method = SearchMethod::Exhaustive;
  std::uint64_t trees_examined = 0;
  std::uint64_t nodes_explored = 0;  // branch-and-bound only
  bool complete = true;              // false when a budget ran out
};

// Edges of the labeled tree with Prüfer sequence `code` on n = code.size()+2
// vertices.
std::vector<PointPair> prufer_decode(std::span<const std::size_t> code, std::size_t n);

// Calls `visit` with every labeled spanning tree on n vertices, in
// lexicographic Prüfer order. Throws TooLarge for n > 9 and OutOfRange for
// n < 2.
void enumerate_spanning_trees(std::size_t n,
                              const std::function<void(const std::vector<PointPair>&)>& visit);

struct ExhaustiveOptions {
  unsigned threads = 1;
  // Keep only trees in which point 0 has maximum degree. Exact for spaces
  // whose isometry group is transitive; throws OutOfRange when the rows of the
  // matrix are not all permutations of each other.
  bool symmetry_filter = false;
};

// Exact minimum distortion over all canonically weighted spanning trees; ties
// go to the smallest Prüfer sequence. Throws TooLarge for |X| > 9.
SearchResult min_distortion_exhaustive(const MetricSpace& space, const ExhaustiveOptions& options = {});

// Depth-first include/exclude search over edges by increasing length,
// starting from the chain-hierarchy tree as incumbent. On budget exhaustion
// lower_bound is the weakest open bound. Throws TooLarge for |X| > 20.
SearchResult min_distortion_bnb(const MetricSpace& space, std::uint64_t node_budget);

// Best-improvement edge swaps until none improves or `iterations` rounds ran.
// Candidate edges are scanned in a seed-dependent order; ties between equally
// good swaps go to the first in that order.
WeightedTree improve_local(const MetricSpace& space, const WeightedTree& start, std::uint64_t seed,
                           std::uint64_t iterations, unsigned threads = 1);

}  // namespace treeapprox
