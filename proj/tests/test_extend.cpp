#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "treeapprox/error.hpp"
#include "treeapprox/extend.hpp"
#include "treeapprox/fixtures.hpp"
#include "treeapprox/metric_analysis.hpp"

using namespace treeapprox;

namespace {

MetricSpace tripod() {
  return testsupport::space({"x1", "x2", "x3"}, {{"0", "3", "4"}, {"3", "0", "5"}, {"4", "5", "0"}});
}

Rational g_at(const RTreeMetric& m, const std::vector<Anchor>& anchors, const TreeLocation& w) {
  Rational g;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    Rational v = m.between(w, anchors[i].location) - anchors[i].radius;
    if (i == 0 || v > g) g = v;
  }
  return g;
}

}  // namespace

TEST_CASE("scaffold_embedding") {
  auto two = testsupport::space({"a", "b"}, {{"0", "3"}, {"3", "0"}});
  auto s = scaffold_embedding(two, ScaffoldMethod::Nagata);
  CHECK(s.realization.edges().size() == 1);
  CHECK(s.realization.edges()[0].length == 3);
  CHECK(s.guaranteed_lip == 8);

  auto x2 = testsupport::x2();
  auto n = scaffold_embedding(x2, ScaffoldMethod::Nagata);
  std::vector<Rational> lengths;
  for (const auto& e : n.realization.edges()) lengths.push_back(e.length);
  CHECK(lengths == std::vector<Rational>{4, 2, 2});
  CHECK(n.realization.node_count() == 4);

  auto g = scaffold_embedding(tripod(), ScaffoldMethod::Gupta);
  CHECK(g.tree.edges().size() == 2);
  CHECK(g.guaranteed_lip == 8);
  CHECK_THROWS_AS(scaffold_embedding(gen_cycle(4), ScaffoldMethod::Gupta), Error);

  CHECK(parse_scaffold("gupta") == ScaffoldMethod::Gupta);
  CHECK(scaffold_name(ScaffoldMethod::Nagata) == "nagata");
  CHECK_THROWS_AS(parse_scaffold("other"), Error);
}

TEST_CASE("one_point_extension examples") {
  auto seg = realize_rtree(testsupport::space({"a", "b"}, {{"0", "10"}, {"10", "0"}}));
  RTreeMetric m(seg);
  TreeLocation a = node_location(seg, seg.node_of(0));
  TreeLocation b = node_location(seg, seg.node_of(1));

  std::vector<Anchor> single{{a, Rational(3)}};
  CHECK(one_point_extension(m, single) == a);

  std::vector<Anchor> pair{{a, Rational(4)}, {b, Rational(6)}};
  auto w = one_point_extension(m, pair);
  CHECK(m.between(w, a) == 4);
  CHECK(m.between(w, b) == 6);

  std::vector<Anchor> apart{{a, Rational(3)}, {b, Rational(3)}};
  try {
    one_point_extension(m, apart);
    FAIL("disjoint balls accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleConstraints);
  }
}

TEST_CASE("one_point_extension minimises over a fine grid") {
  auto r = realize_rtree(tripod());
  RTreeMetric m(r);
  testsupport::Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Anchor> anchors;
    std::size_t k = 1 + rng.below(4);
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t e = rng.below(r.edges().size());
      Rational off = testsupport::ratio(static_cast<long>(rng.below(17)), 16);
      off *= r.edges()[e].length;
      anchors.push_back({{e, off}, testsupport::ratio(static_cast<long>(rng.between(8, 60)), 8)});
    }
    bool feasible = true;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (m.between(anchors[i].location, anchors[j].location) > anchors[i].radius + anchors[j].radius)
          feasible = false;
    if (!feasible) {
      CHECK_THROWS_AS(one_point_extension(m, anchors), Error);
      continue;
    }
    auto w = one_point_extension(m, anchors);
    Rational gw = g_at(m, anchors, w);
    CHECK(gw <= 0);
    for (std::size_t e = 0; e < r.edges().size(); ++e)
      for (int t = 0; t <= 64; ++t) {
        Rational off = r.edges()[e].length * testsupport::ratio(t, 64);
        CHECK(g_at(m, anchors, {e, off}) >= gw);
      }
  }
}

TEST_CASE("lipschitz_extend trivial cases") {
  auto x = gen_random_ultrametric(12, 3);
  testsupport::Rng rng(1);
  std::vector<std::size_t> all(x.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  auto values = testsupport::random_lipschitz_values(x, all, 2, rng);
  auto full = lipschitz_extend(x, {all, values}, ScaffoldMethod::Nagata);
  CHECK(full.extended == values);
  CHECK(full.achieved_lip == lipschitz_constant(x, values));

  std::vector<std::size_t> one{4};
  std::vector<std::vector<double>> v{{1.5, -2.0}};
  auto c = lipschitz_extend(x, {one, v}, ScaffoldMethod::Nagata);
  for (const auto& row : c.extended) CHECK(row == v[0]);
  CHECK(c.achieved_lip == 0.0);
}

TEST_CASE("lipschitz_extend rejects bad input") {
  auto x = testsupport::x2();
  std::vector<std::size_t> z{0, 1};
  std::vector<std::vector<double>> steep{{0.0}, {5.0}};
  try {
    lipschitz_extend(x, {z, steep}, ScaffoldMethod::Nagata);
    FAIL("accepted a steep map");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleConstraints);
  }
  std::vector<std::vector<double>> ragged{{0.0}, {1.0, 2.0}};
  CHECK_THROWS_AS(lipschitz_extend(x, {z, ragged}, ScaffoldMethod::Nagata), Error);
  std::vector<std::vector<double>> short_rows{{0.0}};
  CHECK_THROWS_AS(lipschitz_extend(x, {z, short_rows}, ScaffoldMethod::Nagata), Error);
}

TEST_CASE("lipschitz_extend on random instances") {
  testsupport::Rng rng(30);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    bool tree_like = seed % 3 == 0;
    auto x = tree_like ? gen_random_treeset(30, seed) : testsupport::random_graph_metric(30, 8, seed);
    auto z = testsupport::random_subset(x.size(), 10, rng);
    auto values = testsupport::random_lipschitz_values(x, z, 3, rng);
    for (auto method : {ScaffoldMethod::Nagata, ScaffoldMethod::Gupta}) {
      if (method == ScaffoldMethod::Gupta && !tree_like) continue;
      auto r = lipschitz_extend(x, {z, values}, method);
      CAPTURE(seed);
      for (std::size_t i = 0; i < z.size(); ++i) CHECK(r.extended[z[i]] == values[i]);
      CHECK(r.within_bound());
      CHECK(r.achieved_lip == lipschitz_constant(x, r.extended));
      if (method == ScaffoldMethod::Nagata)
        CHECK(r.guaranteed_lip == 8 * nagata_constant(x.subspace(z)).constant);
      else
        CHECK(r.guaranteed_lip == 8);
      // placements satisfy their own constraints against Z
      RTreeMetric m(r.scaffold.realization);
      for (std::size_t p = 0; p < x.size(); ++p)
        for (std::size_t i = 0; i < z.size(); ++i) {
          TreeLocation zi = node_location(r.scaffold.realization, i);
          CHECK(m.between(r.placement[p], zi) <= r.guaranteed_lip * x(p, z[i]));
        }
    }
  }
}

TEST_CASE("interpolation is 1-Lipschitz along the scaffold") {
  auto x = gen_random_treeset(12, 4);
  auto s = scaffold_embedding(x, ScaffoldMethod::Gupta);
  RTreeMetric m(s.realization);
  // vertex values 1-Lipschitz for the tree metric: distance to vertex 0
  std::vector<std::vector<double>> vv;
  for (std::size_t v = 0; v < x.size(); ++v) vv.push_back({to_double(m.nodes(0, v))});
  std::vector<TreeLocation> samples;
  for (std::size_t e = 0; e < s.realization.edges().size(); ++e)
    for (int t = 0; t <= 4; ++t) samples.push_back({e, s.realization.edges()[e].length * testsupport::ratio(t, 4)});
  for (const auto& a : samples)
    for (const auto& b : samples) {
      double fa = interpolate(s.realization, vv, a)[0], fb = interpolate(s.realization, vv, b)[0];
      CHECK(std::abs(fa - fb) <= to_double(m.between(a, b)) * (1 + 1e-12) + 1e-12);
    }
}

TEST_CASE("Nagata constant of finitely valued spaces") {
  std::vector<MetricSpace> spaces;
  for (int n = 2; n <= 6; ++n) spaces.push_back(gen_binary_leaves(n));
  for (int n = 3; n <= 8; ++n) spaces.push_back(gen_example33(n));
  for (int n = 6; n <= 14; ++n) spaces.push_back(gen_cycle(n));
  for (std::uint64_t s = 0; s < 20; ++s) spaces.push_back(testsupport::random_graph_metric(6 + s % 6, 3, s, 4));
  std::size_t checked = 0;
  for (const auto& x : spaces) {
    std::size_t n = x.distinct_distances().size();
    if (n < 3) continue;
    ++checked;
    CHECK(nagata_constant(x).constant <= pow2(static_cast<int>(n) - 1));
  }
  CHECK(checked >= 20);
  // three values 1, 2, 3 but the whole cycle is one 1-chain of diameter 3,
  // so 2^(n-2) = 2 is exceeded
  CHECK(gen_cycle(6).distinct_distances().size() == 3);
  CHECK(nagata_constant(gen_cycle(6)).constant == 3);
}
