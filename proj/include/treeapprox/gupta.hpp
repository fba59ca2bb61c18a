#pragma once

#include <cstddef>
#include <vector>

#include "treeapprox/metric_space.hpp"
#include "treeapprox/rational.hpp"
#include "treeapprox/rtree.hpp"
#include "treeapprox/weighted_tree.hpp"

namespace treeapprox {

// One visited location of the halving process. The location sits on the
// segment from `node` towards the root at distance `height` above `node`
// (height 0 is the node itself); `depth` is its distance from the root o.
struct HalvingSpot {
  std::size_t node;    // realization node, or RTree::steiner for o itself
  Rational height;
  Rational depth;
  std::size_t claim;   // c(v), an input point
  std::size_t pred;    // index of pred(v) in the spot list; itself for o
  std::size_t level;   // i with v in V_i
};

// Proof quantities for one side [x_1, x_m] of one traced pair.
struct SideTerms {
  std::size_t length = 0;   // m
  Rational tree_length;     // d_T(x_m, x_1)
  Rational to_first;        // d(x_m, v_1)
  Rational term_one;        // I = 2 c_{m-1} - 4 d(p_{m-1}, x_m)
  Rational term_two;        // II = d(x_1, v_1)
  std::size_t v0 = 0;       // spot index of pred(v_1)
};

struct PairTrace {
  std::size_t x, y;       // boundary points
  std::size_t top;        // x_1, the lowest common ancestor in the tree
  SideTerms side_x, side_y;
};

struct GuptaChecks {
  std::size_t pairs = 0;
  std::size_t sides = 0;
  std::size_t term_one_violations = 0;   // I >= 0
  std::size_t term_two_violations = 0;   // II > 3 d(x_m, v_1)
  std::size_t ck_violations = 0;         // c_k > a_k + 2 b_k
  std::size_t claim_violations = 0;      // c(v_k) != x_{k+1} or v_k off [p_k, p_{k+1}]
  std::size_t identity_violations = 0;   // path-length identity fails
  std::size_t side_violations = 0;       // d_T(x_m, x_1) >= 8 d(x_m, v_1)
  std::size_t cross_violations = 0;      // d(x_m,v_1) + d(x'_n,v'_1) > d(x, x')
  std::size_t pred_violations = 0;       // c(pred(v_1)) != x_1
  std::size_t pred_splits = 0;           // pred(v_1) != pred(v'_1); both still claim x_1, not a failure
  std::size_t distortion_violations = 0; // d_T >= 8 d on the component
  Rational max_term_one_ratio;           // max I / d(x_m, v_1), negative when all hold
  Rational max_term_two_ratio;           // max II / d(x_m, v_1)
  Rational max_distortion;               // largest component distortion

  std::size_t violations() const {
    return term_one_violations + term_two_violations + ck_violations + claim_violations +
           identity_violations + side_violations + cross_violations + pred_violations +
           distortion_violations;
  }
  void merge(const GuptaChecks& other);
};

struct ComponentTrace {
  TreeLocation root;
  std::vector<std::size_t> boundary;
  std::vector<HalvingSpot> spots;   // ordered by level, then discovery
  std::vector<PointPair> edges;     // on input points
  std::vector<PairTrace> pairs;     // filled when pair recording is requested
  GuptaChecks checks;
};

// Runs the halving process from `root` on one component and checks the proof
// inequalities on every boundary pair. A component with a single boundary
// point yields no edges.
ComponentTrace gupta_component_tree(const MetricSpace& space, const RTree& tree,
                                    const ComplementComponent& component, const TreeLocation& root,
                                    bool record_pairs = false);

struct GuptaResult {
  WeightedTree tree;
  std::size_t rtree_nodes = 0;
  std::vector<ComponentTrace> components;
  GuptaChecks checks;
};

// Realize, decompose, halve per component and glue. Throws NotZeroHyperbolic
// for inputs without a tree realization. Check failures are reported in
// `checks` and not thrown.
GuptaResult gupta_construct(const MetricSpace& space, bool record_pairs = false);

// As gupta_construct, but throws BoundViolation if any check fails.
WeightedTree gupta_tree(const MetricSpace& space);

}  // namespace treeapprox
