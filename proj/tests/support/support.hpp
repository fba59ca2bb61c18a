#pragma once

// Shared helpers for the test binaries: small matrix builders, random metric
// families that are not part of the library, and brute-force oracles that
// recompute everything without the library's fast paths.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "treeapprox/detail/rng.hpp"
#include "treeapprox/error.hpp"
#include "treeapprox/metric_space.hpp"
#include "treeapprox/rational.hpp"
#include "treeapprox/search.hpp"
#include "treeapprox/weighted_tree.hpp"

namespace testsupport {

using treeapprox::LabeledMatrix;
using treeapprox::MetricSpace;
using treeapprox::PointPair;
using treeapprox::Rational;
using treeapprox::WeightedTree;
using treeapprox::detail::Rng;

// num/den in canonical form; the two-argument mpq_class constructor does not
// reduce.
inline Rational ratio(long num, long den) {
  Rational r{num, den};
  r.canonicalize();
  return r;
}

inline LabeledMatrix raw(std::vector<std::string> labels, const std::vector<std::vector<std::string>>& rows) {
  LabeledMatrix m;
  m.labels = std::move(labels);
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (const auto& v : r) row.push_back(treeapprox::parse_rational(v));
    m.rows.push_back(std::move(row));
  }
  return m;
}

inline MetricSpace space(std::vector<std::string> labels, const std::vector<std::vector<std::string>>& rows) {
  return treeapprox::validate_metric(raw(std::move(labels), rows));
}

// Integer matrix with generated labels p00, p01, ...
inline LabeledMatrix integer_matrix(const std::vector<std::vector<std::int64_t>>& d) {
  LabeledMatrix m;
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::string l = std::to_string(i);
    m.labels.push_back("p" + std::string(2 - std::min<std::size_t>(2, l.size()), '0') + l);
    std::vector<Rational> row;
    for (auto v : d[i]) row.emplace_back(v);
    m.rows.push_back(std::move(row));
  }
  return m;
}

// X_2 as listed: d(00,10)=2, d(01,11)=2, all other pairs 4.
inline MetricSpace x2() {
  return space({"00", "01", "10", "11"}, {{"0", "4", "2", "4"},
                                          {"4", "0", "4", "2"},
                                          {"2", "4", "0", "4"},
                                          {"4", "2", "4", "0"}});
}

inline std::vector<std::vector<std::int64_t>> floyd(std::size_t n,
                                                   const std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>>& edges) {
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [a, b, w] : edges) {
    d[a][b] = std::min(d[a][b], w);
    d[b][a] = std::min(d[b][a], w);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Shortest-path metric of a random connected graph: a random spanning tree
// plus `extra` random chords, integer weights in [1, max_weight].
inline MetricSpace random_graph_metric(std::size_t n, std::size_t extra, std::uint64_t seed,
                                       std::int64_t max_weight = 10) {
  Rng rng(seed);
  std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(rng.below(v), v, rng.between(1, max_weight));
  for (std::size_t e = 0; e < extra && n > 2; ++e) {
    std::size_t a = rng.below(n), b = rng.below(n);
    if (a != b) edges.emplace_back(a, b, rng.between(1, max_weight));
  }
  return treeapprox::validate_metric(integer_matrix(floyd(n, edges)));
}

// Mixed family for the realization oracle: tree metrics, tree metrics with one
// perturbed entry, sparse and dense graph metrics.
inline MetricSpace random_matrix(std::uint64_t seed) {
  Rng rng(seed * 7919 + 13);
  const std::size_t n = 3 + rng.below(6);
  switch (seed % 4) {
    case 0:
      return random_graph_metric(n, n, seed, 6);
    case 1:
      return random_graph_metric(n, 0, seed, 6);
    case 2: {
      auto tree = floyd(n, [&] {
        std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> e;
        for (std::size_t v = 1; v < n; ++v) e.emplace_back(rng.below(v), v, rng.between(2, 8));
        return e;
      }());
      std::size_t a = rng.below(n), b = (a + 1 + rng.below(n - 1)) % n;
      tree[a][b] += 1;
      tree[b][a] += 1;
      try {
        return treeapprox::validate_metric(integer_matrix(tree));
      } catch (const treeapprox::Error&) {
        tree[a][b] -= 1;
        tree[b][a] -= 1;
        return treeapprox::validate_metric(integer_matrix(tree));
      }
    }
    default:
      return random_graph_metric(n, 1, seed, 6);
  }
}

inline std::vector<PointPair> random_tree_edges(std::size_t n, Rng& rng) {
  if (n < 2) return {};
  if (n == 2) return {{0, 1}};
  std::vector<std::size_t> code(n - 2);
  for (auto& c : code) c = rng.below(n);
  return treeapprox::prufer_decode(code, n);
}

// Tree distances by depth-first search from every vertex, independent of
// RootedTree.
inline std::vector<std::vector<Rational>> oracle_tree_metric(const WeightedTree& t) {
  const std::size_t n = t.order();
  std::vector<std::vector<std::pair<std::size_t, Rational>>> adj(n);
  for (const auto& e : t.edges()) {
    adj[e.u].push_back({e.v, e.weight});
    adj[e.v].push_back({e.u, e.weight});
  }
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<bool> seen(n);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    d[s][s] = 0;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (const auto& [w, len] : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          d[s][w] = d[s][v] + len;
          stack.push_back(w);
        }
    }
  }
  return d;
}

// max d_T/d times max d/d_T over all pairs.
inline Rational oracle_distortion(const MetricSpace& x, const WeightedTree& t) {
  auto dt = oracle_tree_metric(t);
  Rational expand = 1, contract = 1;
  bool first = true;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      Rational e = dt[i][j] / x(i, j);
      Rational c = x(i, j) / dt[i][j];
      if (first || e > expand) expand = e;
      if (first || c > contract) contract = c;
      first = false;
    }
  return Rational(expand * contract);
}

// Chain components by repeated flood fill.
inline std::vector<std::vector<std::size_t>> oracle_components(const MetricSpace& x, const Rational& s) {
  const std::size_t n = x.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    blocks.push_back({});
    std::vector<std::size_t> stack{i};
    comp[i] = static_cast<int>(blocks.size() - 1);
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      blocks.back().push_back(v);
      for (std::size_t w = 0; w < n; ++w)
        if (comp[w] < 0 && x(v, w) <= s) {
          comp[w] = comp[i];
          stack.push_back(w);
        }
    }
    std::sort(blocks.back().begin(), blocks.back().end());
  }
  return blocks;
}

inline Rational oracle_block_diameter(const MetricSpace& x, const std::vector<std::size_t>& b) {
  Rational d = 0;
  for (auto i : b)
    for (auto j : b)
      if (x(i, j) > d) d = x(i, j);
  return d;
}

// sup of diam/s over a grid: every distinct distance, plus ten points spread
// inside each gap and above the diameter.
inline Rational oracle_nagata_grid(const MetricSpace& x) {
  std::vector<Rational> scales;
  const auto& dd = x.distinct_distances();
  Rational lower = dd.front() / 2;
  for (std::size_t k = 0; k <= dd.size(); ++k) {
    Rational hi = k < dd.size() ? dd[k] : Rational(dd.back() * 2);
    for (int t = 0; t < 10; ++t) scales.push_back(Rational(lower + (hi - lower) * ratio(t, 10)));
    if (k < dd.size()) scales.push_back(dd[k]);
    lower = hi;
  }
  Rational best = 0;
  for (const auto& s : scales) {
    if (s <= 0) continue;
    for (const auto& b : oracle_components(x, s)) {
      Rational r = oracle_block_diameter(x, b) / s;
      if (r > best) best = r;
    }
  }
  return best;
}

// 1-Lipschitz values on `points` in R^m: coordinate k is the distance to a
// random anchor of X divided by sqrt(m), times a random factor in [1/2, 1],
// plus a random offset.
inline std::vector<std::vector<double>> random_lipschitz_values(const MetricSpace& x,
                                                                const std::vector<std::size_t>& points,
                                                                std::size_t m, Rng& rng) {
  std::vector<std::size_t> anchor(m);
  std::vector<double> scale(m), offset(m);
  for (std::size_t k = 0; k < m; ++k) {
    anchor[k] = rng.below(x.size());
    scale[k] = (0.5 + 0.5 * rng.unit()) / std::sqrt(static_cast<double>(m)) * (rng.below(2) ? 1.0 : -1.0);
    offset[k] = rng.normal();
  }
  std::vector<std::vector<double>> values;
  for (auto p : points) {
    std::vector<double> v(m);
    for (std::size_t k = 0; k < m; ++k) v[k] = offset[k] + scale[k] * treeapprox::to_double(x(p, anchor[k]));
    values.push_back(std::move(v));
  }
  return values;
}

// k distinct indices of [0, n), ascending.
inline std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  rng.shuffle(all);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace testsupport
