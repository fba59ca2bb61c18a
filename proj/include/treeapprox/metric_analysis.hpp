#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "treeapprox/metric_space.hpp"
#include "treeapprox/rational.hpp"

namespace treeapprox {

// Connected components of the threshold graph {d <= scale}.
// Members of a block are ascending point indices; blocks are ordered by their
// smallest member.
struct Partition {
  Rational scale;
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> block_of;  // point index -> block index
};

struct NagataReport {
  Rational constant;      // c_N(X)
  Rational witness_scale;
  std::vector<std::size_t> witness_block;
  bool is_ultrametric = false;
  bool is_zero_hyperbolic = false;
  Rational separation;
  Rational diameter;
};

bool is_ultrametric(const MetricSpace& space);

// First quadruple (i<j<k<l) whose three pair sums do not have their two
// largest values equal, if any.
std::optional<std::array<std::size_t, 4>> four_point_violation(const MetricSpace& space);

bool is_zero_hyperbolic(const MetricSpace& space);

// Throws NonPositiveScale for scale <= 0.
Partition chain_components(const MetricSpace& space, const Rational& scale);

Rational block_diameter(const MetricSpace& space, const std::vector<std::size_t>& block);

// Exact Nagata constant. Chain partitions are constant on each half-open
// interval between consecutive distinct distances and diam/s decreases on it,
// so the supremum is attained at one of the distinct distance values
// (see docs/nagata_constant.md). A single point reports constant 0 and an empty
// witness.
NagataReport nagata_constant(const MetricSpace& space);

}  // namespace treeapprox
