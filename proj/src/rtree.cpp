#include "treeapprox/rtree.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

#include "treeapprox/error.hpp"
#include "treeapprox/metric_analysis.hpp"

namespace treeapprox {

namespace {

std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_of(
    std::size_t nodes, const std::vector<RTreeEdge>& edges) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nodes);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    adj[edges[k].a].push_back({edges[k].b, k});
    adj[edges[k].b].push_back({edges[k].a, k});
  }
  return adj;
}

[[noreturn]] void not_hyperbolic(const MetricSpace& space, const std::string& why) {
  std::vector<std::size_t> witness;
  if (auto q = four_point_violation(space)) witness.assign(q->begin(), q->end());
  throw Error(ErrorCode::NotZeroHyperbolic, why, std::move(witness));
}

// Mutable tree rooted at the base point, used while inserting points.
struct Builder {
  std::vector<std::size_t> point;   // input point or steiner
  std::vector<std::size_t> parent;  // root is its own parent
  std::vector<Rational> up;         // length of the edge to the parent
  std::vector<Rational> depth;      // distance from the root

  std::size_t add(std::size_t p, std::size_t par, const Rational& len) {
    point.push_back(p);
    parent.push_back(par);
    up.push_back(len);
    depth.push_back(depth.empty() ? Rational(0) : Rational(depth[par] + len));
    return point.size() - 1;
  }
};

}  // namespace

RTree::RTree(std::vector<std::size_t> node_point, std::vector<RTreeEdge> edges,
             std::size_t point_count)
    : node_point_(std::move(node_point)), edges_(std::move(edges)), embed_(point_count, steiner) {
  const std::size_t n = node_point_.size();
  if (n == 0 || edges_.size() + 1 != n)
    throw Error(ErrorCode::NotASpanningTree, "realization must be a tree");
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t p = node_point_[v];
    if (p == steiner) continue;
    if (p >= point_count || embed_[p] != steiner)
      throw Error(ErrorCode::NotASpanningTree, "bad point embedding");
    embed_[p] = v;
  }
  for (std::size_t p = 0; p < point_count; ++p)
    if (embed_[p] == steiner) throw Error(ErrorCode::NotASpanningTree, "point not embedded");
  for (const auto& e : edges_)
    if (e.a >= n || e.b >= n || e.a == e.b || e.length <= 0)
      throw Error(ErrorCode::NotASpanningTree, "bad realization edge");
  adjacency_ = adjacency_of(n, edges_);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (auto [w, e] : adjacency_[v])
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
  }
  if (reached != n) throw Error(ErrorCode::NotASpanningTree, "realization is disconnected");
}

std::vector<Rational> RTree::distances_from(std::size_t node) const {
  const std::size_t n = node_count();
  std::vector<Rational> dist(n);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{node};
  seen[node] = true;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (auto [w, e] : adjacency_[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      dist[w] = dist[v] + edges_[e].length;
      stack.push_back(w);
    }
  }
  return dist;
}

RTreeMetric::RTreeMetric(const RTree& tree)
    : tree_(&tree), n_(tree.node_count()), dist_(n_ * n_) {
  for (std::size_t u = 0; u < n_; ++u) {
    auto row = tree.distances_from(u);
    std::move(row.begin(), row.end(), dist_.begin() + static_cast<std::ptrdiff_t>(u * n_));
  }
}

Rational RTreeMetric::to_node(const TreeLocation& x, std::size_t node) const {
  const auto& e = tree_->edges()[x.edge];
  Rational via_a = x.offset + nodes(e.a, node);
  Rational via_b = (e.length - x.offset) + nodes(e.b, node);
  return via_a < via_b ? via_a : via_b;
}

Rational RTreeMetric::between(const TreeLocation& x, const TreeLocation& y) const {
  if (x.edge == y.edge) return abs(x.offset - y.offset);
  const auto& e = tree_->edges()[y.edge];
  Rational via_a = to_node(x, e.a) + y.offset;
  Rational via_b = to_node(x, e.b) + (e.length - y.offset);
  return via_a < via_b ? via_a : via_b;
}

TreeLocation node_location(const RTree& tree, std::size_t node) {
  const auto& nb = tree.neighbours(node);
  if (nb.empty()) throw Error(ErrorCode::OutOfRange, "node has no incident edge");
  std::size_t best = nb.front().second;
  for (auto [w, e] : nb) best = std::min(best, e);
  const auto& edge = tree.edges()[best];
  return {best, edge.a == node ? Rational(0) : edge.length};
}

RTree realize_rtree(const MetricSpace& space) {
  const std::size_t n = space.size();
  const auto& order = space.label_order();
  Builder b;
  std::vector<std::size_t> node_of(n, RTree::steiner);
  const std::size_t x0 = order[0];
  node_of[x0] = b.add(x0, 0, 0);
  b.parent[0] = 0;

  std::vector<std::size_t> inserted{x0};
  for (std::size_t r = 1; r < n; ++r) {
    const std::size_t p = order[r];
    // largest Gromov product (p|q)_x0 over inserted q, first maximizer wins
    Rational best_g;
    std::size_t best_q = x0;
    bool have = false;
    for (std::size_t q : inserted) {
      if (q == x0) continue;
      Rational g = (space(x0, p) + space(x0, q) - space(p, q)) / 2;
      if (!have || g > best_g) {
        best_g = g;
        best_q = q;
        have = true;
      }
    }
    if (!have) best_g = 0;
    if (best_g < 0 || best_g > space(x0, best_q)) not_hyperbolic(space, "Gromov product out of range");
    const Rational pendant = space(x0, p) - best_g;

    // walk up from best_q to the first node at depth <= g
    std::size_t below = RTree::steiner;
    std::size_t v = node_of[best_q];
    while (b.depth[v] > best_g) {
      below = v;
      v = b.parent[v];
    }
    std::size_t attach;
    if (b.depth[v] == best_g) {
      attach = v;
    } else {
      // split the edge (v, below)
      Rational lower = b.depth[below] - best_g;
      attach = b.add(RTree::steiner, v, best_g - b.depth[v]);
      b.parent[below] = attach;
      b.up[below] = lower;
    }
    if (pendant == 0) {
      if (b.point[attach] != RTree::steiner)
        not_hyperbolic(space, "two points realized at the same location");
      b.point[attach] = p;
      node_of[p] = attach;
    } else {
      node_of[p] = b.add(p, attach, pendant);
    }
    inserted.push_back(p);
  }

  std::vector<RTreeEdge> edges;
  for (std::size_t v = 1; v < b.point.size(); ++v) {
    std::size_t u = b.parent[v];
    edges.push_back({std::min(u, v), std::max(u, v), b.up[v]});
  }
  std::sort(edges.begin(), edges.end(), [](const RTreeEdge& x, const RTreeEdge& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  RTree tree(std::move(b.point), std::move(edges), n);

  for (std::size_t i = 0; i < n; ++i) {
    auto dist = tree.distances_from(tree.node_of(i));
    for (std::size_t j = 0; j < n; ++j)
      if (dist[tree.node_of(j)] != space(i, j))
        not_hyperbolic(space, "realized distance differs for " + space.label(i) + ", " +
                                  space.label(j));
  }
  return tree;
}

RTree realize_tree(const WeightedTree& tree) {
  std::vector<std::size_t> points(tree.order());
  std::iota(points.begin(), points.end(), 0);
  std::vector<RTreeEdge> edges;
  for (const auto& e : tree.edges()) edges.push_back({e.u, e.v, e.weight});
  return RTree(std::move(points), std::move(edges), tree.order());
}

std::vector<ComplementComponent> complement_components(const RTree& tree) {
  const auto& edges = tree.edges();
  const std::size_t m = edges.size();
  std::vector<std::size_t> comp(m);
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](std::size_t x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (std::size_t v = 0; v < tree.node_count(); ++v) {
    if (!tree.is_steiner(v)) continue;
    const auto& nb = tree.neighbours(v);
    for (std::size_t k = 1; k < nb.size(); ++k) {
      std::size_t a = find(nb[0].second), c = find(nb[k].second);
      if (a != c) comp[std::max(a, c)] = std::min(a, c);
    }
  }
  std::vector<ComplementComponent> out;
  std::vector<std::size_t> slot(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t r = find(k);
    if (slot[r] == m) {
      slot[r] = out.size();
      out.emplace_back();
    }
    auto& c = out[slot[r]];
    c.edges.push_back(k);
    for (std::size_t v : {edges[k].a, edges[k].b}) {
      if (tree.is_steiner(v))
        c.steiner.push_back(v);
      else
        c.boundary.push_back(tree.point_at(v));
    }
  }
  for (auto& c : out) {
    for (auto* list : {&c.steiner, &c.boundary}) {
      std::sort(list->begin(), list->end());
      list->erase(std::unique(list->begin(), list->end()), list->end());
    }
  }
  return out;
}

TreeLocation component_root(const RTree& tree, const ComplementComponent& component) {
  if (component.edges.empty()) throw Error(ErrorCode::OutOfRange, "empty component");
  std::vector<bool> inside(tree.edges().size(), false);
  for (std::size_t e : component.edges) inside[e] = true;

  // distances and parent edges within the component closure
  auto sweep = [&](std::size_t from, std::vector<Rational>& dist, std::vector<std::size_t>& via) {
    dist.assign(tree.node_count(), Rational(-1));
    via.assign(tree.node_count(), RTree::steiner);
    dist[from] = 0;
    std::vector<std::size_t> stack{from};
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      if (v != from && !tree.is_steiner(v)) continue;  // boundary points are leaves
      for (auto [w, e] : tree.neighbours(v)) {
        if (!inside[e] || dist[w] >= 0) continue;
        dist[w] = dist[v] + tree.edges()[e].length;
        via[w] = e;
        stack.push_back(w);
      }
    }
  };
  auto farthest = [&](const std::vector<Rational>& dist) {
    std::size_t best = component.boundary.front();
    for (std::size_t p : component.boundary)
      if (dist[tree.node_of(p)] > dist[tree.node_of(best)]) best = p;
    return tree.node_of(best);
  };

  std::vector<Rational> dist;
  std::vector<std::size_t> via;
  sweep(tree.node_of(component.boundary.front()), dist, via);
  const std::size_t a = farthest(dist);
  sweep(a, dist, via);
  const std::size_t z = farthest(dist);
  const Rational half = dist[z] / 2;

  // walk back from z towards a until the distance from a drops to half
  std::size_t v = z;
  while (dist[v] > half) {
    const auto& e = tree.edges()[via[v]];
    std::size_t u = e.a == v ? e.b : e.a;
    if (dist[u] < half) {
      // interior of edge via[v]
      Rational from_u = half - dist[u];
      return {via[v], e.a == u ? from_u : Rational(e.length - from_u)};
    }
    v = u;
  }
  // the center is a node; report it on its smallest incident component edge
  std::size_t best = tree.edges().size();
  for (auto [w, e] : tree.neighbours(v))
    if (inside[e]) best = std::min(best, e);
  const auto& e = tree.edges()[best];
  return {best, e.a == v ? Rational(0) : e.length};
}

}  // namespace treeapprox
