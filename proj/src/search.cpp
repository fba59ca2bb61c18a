#include "treeapprox/search.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>

#include "treeapprox/detail/distance_view.hpp"
#include "treeapprox/detail/parallel.hpp"
#include "treeapprox/detail/rng.hpp"
#include "treeapprox/error.hpp"
#include "treeapprox/nagata.hpp"

namespace treeapprox {

namespace {

// max over pairs of d_T / d for a canonically weighted tree, as num/den
template <class V>
struct Ratio {
  V num;
  V den;
};

template <class View>
class TreeEvaluator {
 public:
  using V = typename View::value_type;

  TreeEvaluator(const View& d, std::size_t n) : d_(d), n_(n), adj_(n), row_(n), seen_(n) {}

  // Distortion of the tree, or nullopt as soon as some pair reaches `cutoff`.
  std::optional<Ratio<V>> evaluate(const std::vector<PointPair>& edges, const Ratio<V>* cutoff) {
    for (auto& a : adj_) a.clear();
    for (auto [u, v] : edges) {
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    Ratio<V> worst{V(1), V(1)};
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      std::fill(seen_.begin(), seen_.end(), false);
      row_[i] = View::zero();
      seen_[i] = true;
      stack_.assign(1, i);
      while (!stack_.empty()) {
        std::size_t v = stack_.back();
        stack_.pop_back();
        for (std::size_t w : adj_[v]) {
          if (seen_[w]) continue;
          seen_[w] = true;
          row_[w] = row_[v] + d_(v, w);
          stack_.push_back(w);
        }
      }
      for (std::size_t j = i + 1; j < n_; ++j) {
        const V& dij = d_(i, j);
        if (cutoff && !detail::ratio_less(row_[j], dij, cutoff->num, cutoff->den)) return std::nullopt;
        if (detail::ratio_less(worst.num, worst.den, row_[j], dij)) worst = {row_[j], dij};
      }
    }
    return worst;
  }

 private:
  View d_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<V> row_;
  std::vector<bool> seen_;
  std::vector<std::size_t> stack_;
};

template <class V>
bool less(const Ratio<V>& a, const Ratio<V>& b) {
  return detail::ratio_less(a.num, a.den, b.num, b.den);
}

SearchResult trivial_result(const MetricSpace& space, SearchMethod method) {
  SearchResult r;
  r.best_tree = space.size() == 2 ? canonical_weights(space, std::vector<PointPair>{{0, 1}})
                                   : WeightedTree(space.size(), {});
  r.best_distortion = 1;
  r.lower_bound = 1;
  r.method = method;
  r.trees_examined = 1;
  return r;
}

std::uint64_t cayley(std::size_t n) {
  std::uint64_t c = 1;
  for (std::size_t k = 0; k + 2 < n; ++k) c *= n;
  return c;
}

bool rows_look_transitive(const MetricSpace& space) {
  const std::size_t n = space.size();
  std::vector<Rational> first;
  for (std::size_t j = 0; j < n; ++j) first.push_back(space(0, j));
  std::sort(first.begin(), first.end());
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<Rational> row;
    for (std::size_t j = 0; j < n; ++j) row.push_back(space(i, j));
    std::sort(row.begin(), row.end());
    if (row != first) return false;
  }
  return true;
}

template <class View>
SearchResult exhaustive_kernel(const View& d, const MetricSpace& space, const ExhaustiveOptions& opt) {
  using V = typename View::value_type;
  const std::size_t n = space.size();
  const std::size_t len = n - 2;
  const std::size_t prefix = std::min<std::size_t>(2, len);
  std::size_t chunks = 1;
  for (std::size_t k = 0; k < prefix; ++k) chunks *= n;

  struct ChunkBest {
    std::optional<Ratio<V>> ratio;
    std::vector<std::size_t> code;
    std::uint64_t examined = 0;
  };
  std::vector<ChunkBest> best(chunks);

  detail::parallel_tasks(chunks, opt.threads, [&](std::size_t chunk) {
    TreeEvaluator<View> eval(d, n);
    std::vector<std::size_t> code(len, 0);
    for (std::size_t k = prefix, c = chunk; k-- > 0; c /= n) code[k] = c % n;
    std::vector<std::size_t> degree(n);
    ChunkBest& out = best[chunk];
    while (true) {
      bool keep = true;
      if (opt.symmetry_filter) {
        std::fill(degree.begin(), degree.end(), 1);
        for (std::size_t v : code) ++degree[v];
        keep = degree[0] == *std::max_element(degree.begin(), degree.end());
      }
      if (keep) {
        ++out.examined;
        auto r = eval.evaluate(prufer_decode(code, n), out.ratio ? &*out.ratio : nullptr);
        if (r) {
          out.ratio = r;
          out.code = code;
        }
      }
      // next suffix in lexicographic order
      std::size_t k = len;
      while (k > prefix && code[k - 1] == n - 1) code[--k] = 0;
      if (k == prefix) break;
      ++code[k - 1];
    }
  });

  SearchResult result;
  result.method = SearchMethod::Exhaustive;
  const ChunkBest* winner = nullptr;
  for (const auto& b : best) {
    result.trees_examined += b.examined;
    if (b.ratio && (!winner || less(*b.ratio, *winner->ratio))) winner = &b;
  }
  result.best_tree = canonical_weights(space, prufer_decode(winner->code, n));
  result.best_distortion = detail::make_ratio(winner->ratio->num, winner->ratio->den);
  result.lower_bound = result.best_distortion;
  result.complete = true;
  return result;
}

template <class View>
class BranchAndBound {
 public:
  using V = typename View::value_type;

  BranchAndBound(const View& d, const MetricSpace& space, std::uint64_t budget)
      : d_(d), space_(space), n_(space.size()), budget_(budget) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) edges_.push_back({i, j});
    std::stable_sort(edges_.begin(), edges_.end(), [&](const PointPair& a, const PointPair& b) {
      return d_(a.first, a.second) < d_(b.first, b.second);
    });
    WeightedTree start = nagata_tree(space);
    for (const auto& e : start.edges()) incumbent_edges_.push_back({e.u, e.v});
    TreeEvaluator<View> eval(d_, n_);
    incumbent_ = *eval.evaluate(incumbent_edges_, nullptr);
  }

  SearchResult run() {
    State s;
    s.comp.resize(n_);
    std::iota(s.comp.begin(), s.comp.end(), 0);
    s.dist.assign(n_ * n_, View::zero());
    s.lb = {V(1), V(1)};
    search(0, s);

    SearchResult r;
    r.method = SearchMethod::BranchAndBound;
    r.best_tree = canonical_weights(space_, incumbent_edges_);
    r.best_distortion = detail::make_ratio(incumbent_.num, incumbent_.den);
    r.lower_bound = r.best_distortion;
    if (exhausted_ && open_ && less(*open_, incumbent_))
      r.lower_bound = detail::make_ratio(open_->num, open_->den);
    r.complete = !exhausted_;
    r.trees_examined = leaves_;
    r.nodes_explored = nodes_;
    return r;
  }

 private:
  struct State {
    std::vector<std::size_t> comp;  // component label per point
    std::vector<V> dist;            // forest distances for connected pairs
    std::vector<PointPair> chosen;
    Ratio<V> lb;
  };

  bool can_span(std::size_t k, const State& s) const {
    std::vector<std::size_t> uf(n_);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](std::size_t x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    std::size_t parts = 0;
    for (std::size_t v = 0; v < n_; ++v)
      if (s.comp[v] == v) ++parts;
    for (std::size_t i = k; i < edges_.size() && parts > 1; ++i) {
      std::size_t a = find(s.comp[edges_[i].first]), b = find(s.comp[edges_[i].second]);
      if (a == b) continue;
      uf[a] = b;
      --parts;
    }
    return parts == 1;
  }

  void search(std::size_t k, const State& s) {
    if (!less(s.lb, incumbent_)) return;
    if (s.chosen.size() + 1 == n_) {
      ++leaves_;
      incumbent_ = s.lb;
      incumbent_edges_ = s.chosen;
      return;
    }
    if (k == edges_.size() || !can_span(k, s)) return;
    if (nodes_ >= budget_) {
      exhausted_ = true;
      if (!open_ || less(s.lb, *open_)) open_ = s.lb;
      return;
    }
    ++nodes_;

    auto [u, v] = edges_[k];
    if (s.comp[u] != s.comp[v]) {
      State t = s;
      const std::size_t cu = s.comp[u], cv = s.comp[v];
      const V& w = d_(u, v);
      for (std::size_t a = 0; a < n_; ++a) {
        if (s.comp[a] != cu) continue;
        for (std::size_t b = 0; b < n_; ++b) {
          if (s.comp[b] != cv) continue;
          V dt = s.dist[a * n_ + u] + w + s.dist[v * n_ + b];
          t.dist[a * n_ + b] = dt;
          t.dist[b * n_ + a] = dt;
          if (detail::ratio_less(t.lb.num, t.lb.den, dt, d_(a, b))) t.lb = {dt, d_(a, b)};
        }
      }
      const std::size_t merged = std::min(cu, cv);
      for (auto& c : t.comp)
        if (c == cu || c == cv) c = merged;
      t.chosen.push_back({u, v});
      search(k + 1, t);
    }
    search(k + 1, s);
  }

  View d_;
  const MetricSpace& space_;
  std::size_t n_;
  std::uint64_t budget_;
  std::vector<PointPair> edges_;
  std::vector<PointPair> incumbent_edges_;
  Ratio<V> incumbent_;
  std::optional<Ratio<V>> open_;
  bool exhausted_ = false;
  std::uint64_t nodes_ = 0;
  std::uint64_t leaves_ = 0;
};

template <class View>
std::vector<PointPair> local_kernel(const View& d, std::size_t n, std::vector<PointPair> edges,
                                    std::uint64_t seed, std::uint64_t iterations, unsigned threads) {
  using V = typename View::value_type;
  detail::Rng rng(seed);
  Ratio<V> current = *TreeEvaluator<View>(d, n).evaluate(edges, nullptr);

  for (std::uint64_t round = 0; round < iterations; ++round) {
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    struct Swap {
      std::optional<Ratio<V>> ratio;
      std::size_t removed = 0;
      PointPair added{0, 0};
    };
    std::vector<Swap> found(order.size());
    detail::parallel_tasks(order.size(), threads, [&](std::size_t pos) {
      TreeEvaluator<View> eval(d, n);
      const std::size_t removed = order[pos];
      std::vector<PointPair> rest;
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (e != removed) rest.push_back(edges[e]);
      // side of every vertex once the edge is gone
      std::vector<std::vector<std::size_t>> adj(n);
      for (auto [a, b] : rest) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
      std::vector<bool> side(n, false);
      std::vector<std::size_t> stack{edges[removed].first};
      side[edges[removed].first] = true;
      while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        for (std::size_t y : adj[x])
          if (!side[y]) {
            side[y] = true;
            stack.push_back(y);
          }
      }
      Swap& best = found[pos];
      Ratio<V> cutoff = current;
      rest.push_back({0, 0});
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
          if (side[a] == side[b] || PointPair{a, b} == edges[removed]) continue;
          rest.back() = {a, b};
          if (auto r = eval.evaluate(rest, &cutoff)) {
            best = {r, removed, {a, b}};
            cutoff = *r;
          }
        }
    });

    const Swap* winner = nullptr;
    for (const auto& s : found)
      if (s.ratio && (!winner || less(*s.ratio, *winner->ratio))) winner = &s;
    if (!winner) break;
    edges[winner->removed] = winner->added;
    current = *winner->ratio;
  }
  return edges;
}

}  // namespace

std::string_view method_name(SearchMethod method) {
  switch (method) {
    case SearchMethod::Exhaustive:
      return "exhaustive";
    case SearchMethod::BranchAndBound:
      return "branch-and-bound";
    case SearchMethod::Local:
      return "local";
  }
  return "unknown";
}

std::vector<PointPair> prufer_decode(std::span<const std::size_t> code, std::size_t n) {
  if (n < 2 || code.size() + 2 != n) throw Error(ErrorCode::OutOfRange, "Prüfer code length must be n-2");
  std::vector<std::size_t> degree(n, 1);
  for (std::size_t v : code) {
    if (v >= n) throw Error(ErrorCode::OutOfRange, "Prüfer entry out of range");
    ++degree[v];
  }
  std::vector<PointPair> edges;
  edges.reserve(n - 1);
  for (std::size_t v : code) {
    std::size_t leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.push_back({std::min(leaf, v), std::max(leaf, v)});
    --degree[leaf];
    --degree[v];
  }
  std::size_t a = n, b = n;
  for (std::size_t v = 0; v < n; ++v)
    if (degree[v] == 1) (a == n ? a : b) = v;
  edges.push_back({a, b});
  return edges;
}

void enumerate_spanning_trees(std::size_t n,
                              const std::function<void(const std::vector<PointPair>&)>& visit) {
  if (n < 2) throw Error(ErrorCode::OutOfRange, "spanning-tree enumeration needs n >= 2");
  if (n > 9) throw Error(ErrorCode::TooLarge, "exhaustive enumeration is limited to 9 points");
  std::vector<std::size_t> code(n - 2, 0);
  while (true) {
    visit(prufer_decode(code, n));
    std::size_t k = code.size();
    while (k > 0 && code[k - 1] == n - 1) code[--k] = 0;
    if (k == 0) break;
    ++code[k - 1];
  }
}

SearchResult min_distortion_exhaustive(const MetricSpace& space, const ExhaustiveOptions& options) {
  const std::size_t n = space.size();
  if (n > 9) throw Error(ErrorCode::TooLarge, "exhaustive search is limited to 9 points");
  if (options.symmetry_filter && !rows_look_transitive(space))
    throw Error(ErrorCode::OutOfRange, "symmetry filter needs a space whose rows agree up to order");
  if (n <= 2) return trivial_result(space, SearchMethod::Exhaustive);
  SearchResult r = detail::with_view(space, [&](const auto& d) { return exhaustive_kernel(d, space, options); });
  if (!options.symmetry_filter && r.trees_examined != cayley(n))
    throw Error(ErrorCode::BoundViolation, "enumeration did not visit n^(n-2) trees");
  return r;
}

SearchResult min_distortion_bnb(const MetricSpace& space, std::uint64_t node_budget) {
  const std::size_t n = space.size();
  if (n > 20) throw Error(ErrorCode::TooLarge, "branch and bound is limited to 20 points");
  if (n <= 2) return trivial_result(space, SearchMethod::BranchAndBound);
  return detail::with_view(space, [&](const auto& d) {
    using View = std::decay_t<decltype(d)>;
    return BranchAndBound<View>(d, space, node_budget).run();
  });
}

WeightedTree improve_local(const MetricSpace& space, const WeightedTree& start, std::uint64_t seed,
                           std::uint64_t iterations, unsigned threads) {
  if (start.order() != space.size())
    throw Error(ErrorCode::NotASpanningTree, "start tree does not span the space");
  std::vector<PointPair> edges;
  for (const auto& e : start.edges()) edges.push_back({e.u, e.v});
  edges = detail::with_view(space, [&](const auto& d) {
    return local_kernel(d, space.size(), edges, seed, iterations, threads);
  });
  return canonical_weights(space, edges);
}

}  // namespace treeapprox
