#include "treeapprox/gupta.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "treeapprox/error.hpp"

namespace treeapprox {

namespace {

constexpr std::size_t none = RTree::steiner;

// The component closure re-rooted at o. Local node ids index every vector.
struct LocalTree {
  std::vector<std::size_t> rnode;   // realization node, `none` for a virtual o
  std::vector<std::size_t> parent;  // root: itself
  std::vector<std::size_t> hops;
  std::vector<Rational> depth;
  std::vector<std::vector<std::size_t>> children;
  std::vector<std::size_t> tin, tout;
  std::vector<std::size_t> point;   // input point at a leaf, `none` otherwise
  std::vector<std::size_t> min_leaf;
  std::vector<std::size_t> leaf_count;
  std::size_t root = 0;

  bool contains(std::size_t anc, std::size_t v) const {
    return tin[anc] <= tin[v] && tin[v] < tout[anc];
  }
  std::size_t lca(std::size_t a, std::size_t b) const {
    while (hops[a] > hops[b]) a = parent[a];
    while (hops[b] > hops[a]) b = parent[b];
    while (a != b) {
      a = parent[a];
      b = parent[b];
    }
    return a;
  }
};

LocalTree build_local(const MetricSpace& space, const RTree& tree,
                      const ComplementComponent& comp, const TreeLocation& o) {
  LocalTree t;
  std::vector<std::size_t> local_of(tree.node_count(), none);
  auto add_node = [&](std::size_t r) {
    local_of[r] = t.rnode.size();
    t.rnode.push_back(r);
  };
  for (std::size_t v : comp.steiner) add_node(v);
  for (std::size_t p : comp.boundary) add_node(tree.node_of(p));

  // adjacency inside the closure, plus a virtual node for an interior o
  std::vector<std::vector<std::pair<std::size_t, Rational>>> adj(t.rnode.size());
  const auto& oe = tree.edges()[o.edge];
  bool virtual_root = o.offset > 0 && o.offset < oe.length;
  if (virtual_root) {
    t.rnode.push_back(none);
    adj.emplace_back();
  }
  for (std::size_t e : comp.edges) {
    const auto& edge = tree.edges()[e];
    std::size_t a = local_of[edge.a], b = local_of[edge.b];
    if (virtual_root && e == o.edge) {
      std::size_t r = t.rnode.size() - 1;
      adj[a].push_back({r, o.offset});
      adj[r].push_back({a, o.offset});
      adj[b].push_back({r, edge.length - o.offset});
      adj[r].push_back({b, edge.length - o.offset});
      continue;
    }
    adj[a].push_back({b, edge.length});
    adj[b].push_back({a, edge.length});
  }
  if (virtual_root)
    t.root = t.rnode.size() - 1;
  else
    t.root = local_of[o.offset == 0 ? oe.a : oe.b];

  const std::size_t n = t.rnode.size();
  t.parent.assign(n, none);
  t.hops.assign(n, 0);
  t.depth.assign(n, Rational(0));
  t.children.assign(n, {});
  t.tin.assign(n, 0);
  t.tout.assign(n, 0);
  t.point.assign(n, none);
  t.min_leaf.assign(n, none);
  t.leaf_count.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    if (t.rnode[v] != none && !tree.is_steiner(t.rnode[v])) t.point[v] = tree.point_at(t.rnode[v]);

  // iterative DFS for parents, Euler times and post-order aggregates
  std::vector<std::size_t> post;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{t.root, 0}};
  t.parent[t.root] = t.root;
  std::size_t clock = 0;
  t.tin[t.root] = clock++;
  while (!stack.empty()) {
    auto& [v, k] = stack.back();
    if (k < adj[v].size()) {
      auto [w, len] = adj[v][k++];
      if (t.parent[w] != none) continue;
      t.parent[w] = v;
      t.hops[w] = t.hops[v] + 1;
      t.depth[w] = t.depth[v] + len;
      t.children[v].push_back(w);
      t.tin[w] = clock++;
      stack.push_back({w, 0});
    } else {
      t.tout[v] = clock;
      post.push_back(v);
      stack.pop_back();
    }
  }
  for (std::size_t v : post) {
    if (t.point[v] != none && t.children[v].empty()) {
      t.min_leaf[v] = v;
      t.leaf_count[v] = 1;
      continue;
    }
    for (std::size_t w : t.children[v]) {
      t.leaf_count[v] += t.leaf_count[w];
      std::size_t c = t.min_leaf[w];
      std::size_t& best = t.min_leaf[v];
      if (best == none || t.depth[c] < t.depth[best] ||
          (t.depth[c] == t.depth[best] &&
           space.label_rank(t.point[c]) < space.label_rank(t.point[best])))
        best = c;
    }
  }
  return t;
}

struct Spot {
  std::size_t node;  // local
  Rational height;
  Rational depth;
  std::size_t claim;  // local leaf
  std::size_t pred;
  std::size_t level;
};

// Spots at depth D inside the subtree below `u` (u itself deeper than D is
// handled by the caller).
void sphere_below(const LocalTree& t, std::size_t u, const Rational& D, std::vector<Spot>& out) {
  for (std::size_t w : t.children[u]) {
    if (t.depth[w] >= D)
      out.push_back({w, t.depth[w] - D, D, none, 0, 0});
    else
      sphere_below(t, w, D, out);
  }
}

class PairChecker {
 public:
  PairChecker(const MetricSpace& space, const LocalTree& t, const std::vector<Spot>& spots,
              const std::vector<std::size_t>& leaves, const RootedTree& tt)
      : space_(space), t_(t), spots_(spots), leaves_(leaves), tt_(tt) {
    // V-spots on the root path of each leaf, by increasing depth
    on_path_.resize(leaves.size());
    for (std::size_t li = 0; li < leaves.size(); ++li) {
      for (std::size_t s = 0; s < spots.size(); ++s)
        if (t.contains(spots[s].node, leaves[li])) on_path_[li].push_back(s);
      std::sort(on_path_[li].begin(), on_path_[li].end(),
                [&](std::size_t a, std::size_t b) { return spots[a].depth < spots[b].depth; });
    }
  }

  // side from x_1 (tree ancestor) up to leaf index `xm`; returns false when
  // the side is trivial
  bool side(std::size_t x1, std::size_t xm, SideTerms& terms, GuptaChecks& checks) const {
    if (x1 == xm) return false;
    // x_1 .. x_m along the tree
    std::vector<std::size_t> path;
    for (std::size_t v = xm; v != x1; v = tt_.parent(v)) path.push_back(v);
    path.push_back(x1);
    std::reverse(path.begin(), path.end());
    const std::size_t m = path.size();
    terms.length = m;
    ++checks.sides;

    auto local = [&](std::size_t k) { return leaves_[path[k - 1]]; };  // 1-based x_k
    const std::size_t lm = local(m);
    const auto& onpath = on_path_[path[m - 1]];
    std::vector<Rational> p(m + 1);
    for (std::size_t k = 1; k < m; ++k) p[k] = t_.depth[t_.lca(local(k), lm)];
    p[m] = t_.depth[lm];

    std::vector<std::size_t> v(m);  // spot indices v_1 .. v_{m-1}
    bool ok = true;
    for (std::size_t k = 1; k < m; ++k) {
      auto it = std::upper_bound(onpath.begin(), onpath.end(), p[k],
                                 [&](const Rational& d, std::size_t s) { return d < spots_[s].depth; });
      if (it == onpath.end() || spots_[*it].depth > p[k + 1] ||
          spots_[*it].claim != local(k + 1)) {
        ++checks.claim_violations;
        ok = false;
        break;
      }
      v[k] = *it;
    }
    if (!ok) return false;
    terms.v0 = spots_[v[1]].pred;
    if (spots_[terms.v0].claim != local(1)) ++checks.pred_violations;

    auto dep = [&](std::size_t s) -> const Rational& { return spots_[s].depth; };
    auto c = [&](std::size_t k) { return Rational(t_.depth[local(k)] - p[k]); };
    Rational sum_c = 0;
    for (std::size_t k = 2; k < m; ++k) {
      Rational a = p[k] - dep(v[k - 1]);
      Rational b = dep(v[k]) - p[k];
      Rational ck = c(k);
      if (ck > a + 2 * b) ++checks.ck_violations;
      sum_c += ck;
    }
    terms.to_first = t_.depth[lm] - dep(v[1]);
    terms.term_two = c(1) + (dep(v[1]) - p[1]);
    terms.tree_length = tt_.depth(path[m - 1]) - tt_.depth(path[0]);
    if (terms.tree_length != terms.to_first + 2 * sum_c + terms.term_two)
      ++checks.identity_violations;
    terms.term_one = 2 * c(m - 1) - 4 * (t_.depth[lm] - p[m - 1]);
    if (terms.term_one >= 0) ++checks.term_one_violations;
    if (terms.term_two > 3 * terms.to_first) ++checks.term_two_violations;
    if (terms.tree_length >= 8 * terms.to_first) ++checks.side_violations;

    Rational r1 = terms.term_one / terms.to_first;
    Rational r2 = terms.term_two / terms.to_first;
    if (checks.sides == 1 || r1 > checks.max_term_one_ratio) checks.max_term_one_ratio = r1;
    if (checks.sides == 1 || r2 > checks.max_term_two_ratio) checks.max_term_two_ratio = r2;
    return true;
  }

  void pair(std::size_t x, std::size_t y, GuptaChecks& checks, std::vector<PairTrace>* record) const {
    ++checks.pairs;
    PairTrace tr;
    tr.x = x;
    tr.y = y;
    tr.top = tt_.lca(x, y);
    bool sx = side(tr.top, x, tr.side_x, checks);
    bool sy = side(tr.top, y, tr.side_y, checks);
    const Rational& dxy = space_(t_.point[leaves_[x]], t_.point[leaves_[y]]);
    if (sx && sy) {
      if (tr.side_x.to_first + tr.side_y.to_first > dxy) ++checks.cross_violations;
      if (tr.side_x.v0 != tr.side_y.v0) ++checks.pred_splits;
    } else if (sx) {
      if (tr.side_x.to_first > dxy) ++checks.cross_violations;
    } else if (sy) {
      if (tr.side_y.to_first > dxy) ++checks.cross_violations;
    }
    if (record) record->push_back(std::move(tr));
  }

 private:
  const MetricSpace& space_;
  const LocalTree& t_;
  const std::vector<Spot>& spots_;
  const std::vector<std::size_t>& leaves_;
  const RootedTree& tt_;
  std::vector<std::vector<std::size_t>> on_path_;
};

}  // namespace

void GuptaChecks::merge(const GuptaChecks& o) {
  if (o.sides > 0) {
    if (sides == 0 || o.max_term_one_ratio > max_term_one_ratio)
      max_term_one_ratio = o.max_term_one_ratio;
    if (sides == 0 || o.max_term_two_ratio > max_term_two_ratio)
      max_term_two_ratio = o.max_term_two_ratio;
  }
  if (o.max_distortion > max_distortion) max_distortion = o.max_distortion;
  pairs += o.pairs;
  sides += o.sides;
  term_one_violations += o.term_one_violations;
  term_two_violations += o.term_two_violations;
  ck_violations += o.ck_violations;
  claim_violations += o.claim_violations;
  identity_violations += o.identity_violations;
  side_violations += o.side_violations;
  cross_violations += o.cross_violations;
  pred_violations += o.pred_violations;
  pred_splits += o.pred_splits;
  distortion_violations += o.distortion_violations;
}

ComponentTrace gupta_component_tree(const MetricSpace& space, const RTree& tree,
                                    const ComplementComponent& component, const TreeLocation& root,
                                    bool record_pairs) {
  ComponentTrace trace;
  trace.root = root;
  trace.boundary = component.boundary;
  if (component.boundary.size() < 2) return trace;

  const LocalTree t = build_local(space, tree, component, root);

  std::vector<Spot> spots;
  spots.push_back({t.root, 0, 0, t.min_leaf[t.root], 0, 0});
  std::size_t begin = 0;
  while (begin < spots.size()) {
    const std::size_t end = spots.size();
    for (std::size_t s = begin; s < end; ++s) {
      const std::size_t u = spots[s].node;
      if (t.leaf_count[u] <= 1) continue;  // nothing but c(v) above
      const std::size_t c = spots[s].claim;
      const Rational D = spots[s].depth + (t.depth[c] - spots[s].depth) / 2;
      std::vector<Spot> sphere;
      if (t.depth[u] >= D)
        sphere.push_back({u, t.depth[u] - D, D, none, 0, 0});
      else
        sphere_below(t, u, D, sphere);
      for (auto& w : sphere) {
        w.pred = s;
        w.level = spots[s].level + 1;
        if (t.contains(w.node, c)) {
          w.claim = c;
        } else {
          w.claim = t.min_leaf[w.node];
          std::size_t a = t.point[c], b = t.point[w.claim];
          trace.edges.push_back({std::min(a, b), std::max(a, b)});
        }
        spots.push_back(std::move(w));
      }
    }
    begin = end;
  }
  std::sort(trace.edges.begin(), trace.edges.end());

  for (const auto& s : spots)
    trace.spots.push_back({t.rnode[s.node], s.height, s.depth, t.point[s.claim], s.pred, s.level});

  // the emitted edges on boundary-local indices
  const auto& boundary = component.boundary;
  auto index_in_boundary = [&](std::size_t p) {
    return static_cast<std::size_t>(std::lower_bound(boundary.begin(), boundary.end(), p) -
                                    boundary.begin());
  };
  MetricSpace sub = space.subspace(boundary);
  std::vector<PointPair> local_edges;
  for (auto [a, b] : trace.edges) local_edges.push_back({index_in_boundary(a), index_in_boundary(b)});
  std::optional<WeightedTree> local_tree;
  try {
    local_tree.emplace(canonical_weights(sub, local_edges));
  } catch (const Error& e) {
    throw Error(ErrorCode::BoundViolation,
                std::string("halving process did not produce a spanning tree: ") + e.what());
  }

  DistortionReport dist = distortion(sub, *local_tree);
  trace.checks.max_distortion = dist.distortion;
  if (dist.distortion >= 8) ++trace.checks.distortion_violations;

  // leaves in boundary order, and the tree rooted at c(o)
  std::vector<std::size_t> leaves(boundary.size());
  for (std::size_t v = 0; v < t.rnode.size(); ++v)
    if (t.point[v] != none) leaves[index_in_boundary(t.point[v])] = v;
  std::vector<std::size_t> tree_index(t.rnode.size(), none);
  for (std::size_t i = 0; i < leaves.size(); ++i) tree_index[leaves[i]] = i;
  RootedTree tt(*local_tree, tree_index[spots[0].claim]);

  PairChecker checker(space, t, spots, leaves, tt);
  for (std::size_t x = 0; x < leaves.size(); ++x)
    for (std::size_t y = x + 1; y < leaves.size(); ++y)
      checker.pair(x, y, trace.checks, record_pairs ? &trace.pairs : nullptr);
  if (record_pairs)
    for (auto& pr : trace.pairs) {
      pr.x = boundary[pr.x];
      pr.y = boundary[pr.y];
      pr.top = boundary[pr.top];
    }
  return trace;
}

GuptaResult gupta_construct(const MetricSpace& space, bool record_pairs) {
  if (space.size() == 1) return GuptaResult{WeightedTree(1, {}), 1, {}, {}};
  RTree tree = realize_rtree(space);
  std::vector<PointPair> edges;
  std::vector<ComponentTrace> traces;
  GuptaChecks checks;
  for (const auto& comp : complement_components(tree)) {
    traces.push_back(gupta_component_tree(space, tree, comp, component_root(tree, comp), record_pairs));
    checks.merge(traces.back().checks);
    edges.insert(edges.end(), traces.back().edges.begin(), traces.back().edges.end());
  }
  std::optional<WeightedTree> glued;
  try {
    glued.emplace(canonical_weights(space, edges));
  } catch (const Error& e) {
    throw Error(ErrorCode::BoundViolation, std::string("glued edge set is not a spanning tree: ") + e.what());
  }
  return GuptaResult{std::move(*glued), tree.node_count(), std::move(traces), checks};
}

WeightedTree gupta_tree(const MetricSpace& space) {
  GuptaResult r = gupta_construct(space);
  if (r.checks.violations() > 0)
    throw Error(ErrorCode::BoundViolation,
                std::to_string(r.checks.violations()) + " halving-process checks failed");
  return std::move(r.tree);
}

}  // namespace treeapprox
