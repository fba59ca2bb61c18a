#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "treeapprox/metric_space.hpp"
#include "treeapprox/rational.hpp"
#include "treeapprox/rtree.hpp"
#include "treeapprox/weighted_tree.hpp"

namespace treeapprox {

enum class ScaffoldMethod { Nagata, Gupta };

std::string_view scaffold_name(ScaffoldMethod method);
// Throws MalformedInput for anything but "nagata" or "gupta".
ScaffoldMethod parse_scaffold(std::string_view name);

struct Scaffold {
  WeightedTree tree;      // on the points of Z
  RTree realization;      // node i is point i of Z
  Rational guaranteed_lip;  // 8 c_N(Z) for nagata, 8 for gupta
};

// Throws NotZeroHyperbolic for the gupta scaffold on a space without a tree
// realization.
Scaffold scaffold_embedding(const MetricSpace& z, ScaffoldMethod method);

struct Anchor {
  TreeLocation location;
  Rational radius;
};

// The unique minimizer of max_i (d(w, anchor_i) - radius_i) over the tree,
// which lies in every ball. Node positions are reported on their smallest
// incident edge. Throws InfeasibleConstraints when two balls are disjoint or
// the minimum is positive, OutOfRange for an edgeless tree or no anchors.
TreeLocation one_point_extension(const RTreeMetric& tree, std::span<const Anchor> anchors);

// Values f(z) in R^m for the points `points` of X (indices into X).
struct ValuedSubset {
  std::vector<std::size_t> points;
  std::vector<std::vector<double>> values;
};

struct ExtensionResult {
  std::vector<std::vector<double>> extended;  // per point of X
  Scaffold scaffold;
  std::vector<TreeLocation> placement;        // per point of X; empty when |Z| = 1
  double achieved_lip = 0.0;
  Rational guaranteed_lip;

  bool within_bound() const;  // achieved <= guaranteed (1 + 1e-9)
};

// Relative tolerance applied when checking that the input values are
// 1-Lipschitz.
inline constexpr double input_lipschitz_tolerance = 1e-12;

// Extends the 1-Lipschitz map on Z to all of X through the scaffold tree:
// points of Z sit on their vertices, the others are placed one at a time (in
// label order) by one_point_extension against every point placed so far, and
// values are interpolated linearly along edges. Throws InfeasibleConstraints
// when the input is not 1-Lipschitz, MalformedInput for inconsistent data.
ExtensionResult lipschitz_extend(const MetricSpace& x, const ValuedSubset& data, ScaffoldMethod method);

// max ||f(x) - f(y)|| / d(x, y) over all pairs; 0 for a single point.
double lipschitz_constant(const MetricSpace& x, const std::vector<std::vector<double>>& values);

// Linear interpolation of vertex values at a location of the realization.
std::vector<double> interpolate(const RTree& tree, const std::vector<std::vector<double>>& vertex_values,
                                const TreeLocation& at);

}  // namespace treeapprox
