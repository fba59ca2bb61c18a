#include "treeapprox/weighted_tree.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

#include "treeapprox/detail/distance_view.hpp"
#include "treeapprox/error.hpp"

namespace treeapprox {

namespace {

[[noreturn]] void not_spanning(const std::string& why) {
  throw Error(ErrorCode::NotASpanningTree, why);
}

// Distances from `source` to every vertex, accumulated in Num.
template <class Num, class WeightOf>
void single_source(const WeightedTree& tree, std::size_t source, WeightOf&& weight_of,
                   std::vector<Num>& out, std::vector<std::size_t>& stack,
                   std::vector<std::size_t>& from) {
  const std::size_t n = tree.order();
  out[source] = Num(0);
  from.assign(n, n);
  from[source] = source;
  stack.clear();
  stack.push_back(source);
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (auto [w, e] : tree.neighbours(v)) {
      if (from[w] != n) continue;
      from[w] = v;
      out[w] = out[v] + weight_of(e);
      stack.push_back(w);
    }
  }
}

template <class View, class Num, class WeightOf>
DistortionReport distortion_kernel(const View& d, const WeightedTree& tree, WeightOf&& weight_of) {
  const std::size_t n = tree.order();
  DistortionReport report;
  std::vector<Num> row(n);
  std::vector<std::size_t> stack, from;
  // best expansion a/b (d_T/d) and contraction c/e (d/d_T)
  Num exp_num = Num(1), exp_den = Num(1), con_num = Num(1), con_den = Num(1);
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    single_source<Num>(tree, i, weight_of, row, stack, from);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Num dij = Num(d(i, j));
      if (first || detail::ratio_less(exp_num, exp_den, row[j], dij)) {
        exp_num = row[j];
        exp_den = dij;
        report.witness_expand = {i, j};
      }
      if (first || detail::ratio_less(con_num, con_den, dij, row[j])) {
        con_num = dij;
        con_den = row[j];
        report.witness_contract = {i, j};
      }
      first = false;
    }
  }
  if (first) {
    report.expansion = report.contraction = report.distortion = 1;
    return report;
  }
  report.expansion = detail::make_ratio(exp_num, exp_den);
  report.contraction = detail::make_ratio(con_num, con_den);
  report.distortion = report.expansion * report.contraction;
  return report;
}

}  // namespace

WeightedTree::WeightedTree(std::size_t order, std::vector<TreeEdge> edges)
    : order_(order), edges_(std::move(edges)) {
  if (order_ == 0) not_spanning("tree has no vertices");
  if (edges_.size() + 1 != order_)
    not_spanning("a spanning tree on " + std::to_string(order_) + " vertices needs " +
                 std::to_string(order_ - 1) + " edges, got " + std::to_string(edges_.size()));
  for (auto& e : edges_) {
    if (e.u >= order_ || e.v >= order_) not_spanning("edge endpoint out of range");
    if (e.u == e.v) not_spanning("self loop");
    if (e.weight <= 0) not_spanning("edge weights must be positive");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(), [](const TreeEdge& a, const TreeEdge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  adjacency_.assign(order_, {});
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    adjacency_[edges_[k].u].push_back({edges_[k].v, k});
    adjacency_[edges_[k].v].push_back({edges_[k].u, k});
  }
  // n-1 edges + connected => acyclic
  std::vector<bool> seen(order_, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (auto [w, e] : adjacency_[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      ++reached;
      stack.push_back(w);
    }
  }
  if (reached != order_) not_spanning("edges do not connect all vertices");
}

RootedTree::RootedTree(const WeightedTree& tree, std::size_t root)
    : root_(root), parent_(tree.order(), tree.order()), hops_(tree.order(), 0),
      depth_(tree.order()) {
  const std::size_t n = tree.order();
  parent_[root] = root;
  depth_[root] = 0;
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (auto [w, e] : tree.neighbours(v)) {
      if (parent_[w] != n) continue;
      parent_[w] = v;
      hops_[w] = hops_[v] + 1;
      depth_[w] = depth_[v] + tree.edges()[e].weight;
      stack.push_back(w);
    }
  }
}

std::size_t RootedTree::lca(std::size_t a, std::size_t b) const {
  while (hops_[a] > hops_[b]) a = parent_[a];
  while (hops_[b] > hops_[a]) b = parent_[b];
  while (a != b) {
    a = parent_[a];
    b = parent_[b];
  }
  return a;
}

std::vector<std::size_t> RootedTree::path(std::size_t a, std::size_t b) const {
  const std::size_t top = lca(a, b);
  std::vector<std::size_t> up, down;
  for (std::size_t v = a; v != top; v = parent_[v]) up.push_back(v);
  up.push_back(top);
  for (std::size_t v = b; v != top; v = parent_[v]) down.push_back(v);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

Rational RootedTree::distance(std::size_t a, std::size_t b) const {
  return depth_[a] + depth_[b] - 2 * depth_[lca(a, b)];
}

RationalMatrix tree_metric(const WeightedTree& tree) {
  const std::size_t n = tree.order();
  RationalMatrix m{n, std::vector<Rational>(n * n)};
  std::vector<Rational> row(n);
  std::vector<std::size_t> stack, from;
  auto weight_of = [&](std::size_t e) -> const Rational& { return tree.edges()[e].weight; };
  for (std::size_t i = 0; i < n; ++i) {
    single_source<Rational>(tree, i, weight_of, row, stack, from);
    std::copy(row.begin(), row.end(), m.values.begin() + static_cast<std::ptrdiff_t>(i * n));
  }
  return m;
}

WeightedTree canonical_weights(const MetricSpace& space, std::span<const PointPair> edges) {
  std::vector<TreeEdge> weighted;
  weighted.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= space.size() || v >= space.size()) not_spanning("edge endpoint out of range");
    weighted.push_back({u, v, space(u, v)});
  }
  return WeightedTree(space.size(), std::move(weighted));
}

DistortionReport distortion(const MetricSpace& space, const WeightedTree& tree) {
  if (tree.order() != space.size())
    throw Error(ErrorCode::NotASpanningTree, "tree does not span the metric space");

  if (const auto* scaled = space.scaled()) {
    // integer path: every weight must be a multiple of 1/denominator and the
    // total weight must stay inside the scaled range
    std::vector<std::int64_t> w;
    w.reserve(tree.edges().size());
    mpz_class total = 0;
    bool ok = true;
    for (const auto& e : tree.edges()) {
      Rational s = e.weight * Rational(scaled->denominator);
      if (s.get_den() != 1) {
        ok = false;
        break;
      }
      total += s.get_num();
      if (total > mpz_class(std::int64_t{1} << 62)) {
        ok = false;
        break;
      }
      w.push_back(to_int64(s.get_num()));
    }
    if (ok) {
      detail::IntView d{scaled->values.data(), space.size(), &scaled->denominator};
      return distortion_kernel<detail::IntView, std::int64_t>(
          d, tree, [&](std::size_t e) { return w[e]; });
    }
  }
  detail::RationalView d{&space};
  return distortion_kernel<detail::RationalView, Rational>(
      d, tree, [&](std::size_t e) -> const Rational& { return tree.edges()[e].weight; });
}

}  // namespace treeapprox
