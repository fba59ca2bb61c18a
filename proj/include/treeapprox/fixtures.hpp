#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "treeapprox/metric_space.hpp"

namespace treeapprox {

// All generators throw OutOfRange for parameters outside the stated ranges.

// The 2^n words in {0,1}^n with d(x, x') = 2 max{k : x_k != x'_k}, 1 <= n <= 12.
MetricSpace gen_binary_leaves(int n);

// Shortest-path metric of the n-cycle, 3 <= n <= 4096. Labels are zero-padded
// positions.
MetricSpace gen_cycle(int n);

// 0 .. 2^k - 1 with d(x, y) = 2^-v(x - y), v the 2-adic valuation, 1 <= k <= 7.
MetricSpace gen_adic(int k);

// Leaves of the full binary tree of height N (labels are root-to-leaf bit
// paths) whose edges at levels N and N-1 weigh 1 and at level k <= N-2 weigh
// 2^(N-1-k); path metric. 3 <= N <= 12.
MetricSpace gen_example33(int N);

// Recursive balanced bisection: the two halves of a block of diameter D are
// at distance D from each other and each half of size >= 2 gets a diameter
// drawn uniformly from [ceil(D/2), D-1]. The top diameter is 2^40, labels are
// assigned through a random permutation. 2 <= n <= 4096.
MetricSpace gen_random_ultrametric(std::size_t n, std::uint64_t seed);

// Random recursive tree on 2n nodes (node i hangs off a uniform earlier node
// with an integer weight in [1, 16]); n distinct nodes are sampled uniformly
// and their path metric returned. 2 <= n <= 4096.
MetricSpace gen_random_treeset(std::size_t n, std::uint64_t seed);

struct FixtureParams {
  std::optional<int> n;
  std::optional<int> N;
  std::optional<int> k;
  std::uint64_t seed = 0;
};

// Dispatch by family name: binary-leaves (n), cycle (n), adic (k),
// example33 (N), random-ultrametric (n, seed), random-treeset (n, seed).
// Throws MalformedInput for an unknown family or a missing parameter.
MetricSpace generate_fixture(std::string_view family, const FixtureParams& params);

}  // namespace treeapprox
