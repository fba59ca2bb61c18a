#include "treeapprox/metric_analysis.hpp"

#include <algorithm>
#include <numeric>

#include "treeapprox/detail/distance_view.hpp"
#include "treeapprox/error.hpp"

namespace treeapprox {

namespace {

using detail::IntView;
using detail::RationalView;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // Returns the surviving root.
  std::size_t unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return a;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

Partition partition_from(UnionFind& uf, std::size_t n, const Rational& scale) {
  Partition p;
  p.scale = scale;
  p.block_of.assign(n, 0);
  std::vector<std::size_t> block_of_root(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = uf.find(i);
    if (block_of_root[r] == n) {
      block_of_root[r] = p.blocks.size();
      p.blocks.emplace_back();
    }
    p.block_of[i] = block_of_root[r];
    p.blocks[block_of_root[r]].push_back(i);
  }
  return p;
}

template <class View>
bool ultrametric_kernel(const View& d, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const auto& a = d(i, k);
        const auto& b = d(k, j);
        if (d(i, j) > (a < b ? b : a)) return false;
      }
  return true;
}

template <class View>
std::optional<std::array<std::size_t, 4>> four_point_kernel(const View& d, std::size_t n) {
  using V = typename View::value_type;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          V s1 = d(i, j) + d(k, l);
          V s2 = d(i, k) + d(j, l);
          V s3 = d(i, l) + d(j, k);
          // sort descending; the largest two must coincide
          if (s1 < s2) std::swap(s1, s2);
          if (s2 < s3) std::swap(s2, s3);
          if (s1 < s2) std::swap(s1, s2);
          if (s1 != s2) return std::array<std::size_t, 4>{i, j, k, l};
        }
  return std::nullopt;
}

struct PairRef {
  std::size_t i, j;
};

template <class View>
void nagata_kernel(const View& d, std::size_t n, NagataReport& report) {
  using V = typename View::value_type;
  std::vector<PairRef> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](const PairRef& a, const PairRef& b) { return d(a.i, a.j) < d(b.i, b.j); });

  UnionFind uf(n);
  std::vector<std::vector<std::size_t>> members(n);
  std::vector<V> diam(n, View::zero());
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};

  V max_diam = View::zero();
  bool have_best = false;
  V best_diam = View::zero();
  V best_scale = View::zero();

  std::size_t p = 0;
  while (p < pairs.size()) {
    const V scale = d(pairs[p].i, pairs[p].j);
    for (; p < pairs.size() && d(pairs[p].i, pairs[p].j) == scale; ++p) {
      std::size_t a = uf.find(pairs[p].i), b = uf.find(pairs[p].j);
      if (a == b) continue;
      V merged = diam[a] < diam[b] ? diam[b] : diam[a];
      for (std::size_t x : members[a])
        for (std::size_t y : members[b])
          if (merged < d(x, y)) merged = d(x, y);
      std::size_t root = uf.unite(a, b);
      std::size_t other = root == a ? b : a;
      members[root].insert(members[root].end(), members[other].begin(), members[other].end());
      members[other].clear();
      members[other].shrink_to_fit();
      diam[root] = merged;
      if (max_diam < merged) max_diam = merged;
    }
    // ratio max_diam / scale strictly better than the incumbent?
    if (!have_best || detail::ratio_less(best_diam, best_scale, max_diam, scale)) {
      have_best = true;
      best_diam = max_diam;
      best_scale = scale;
      std::size_t best_root = n;
      std::size_t best_min = n;
      for (std::size_t x = 0; x < n; ++x) {
        std::size_t r = uf.find(x);
        if (diam[r] != max_diam) continue;
        std::size_t m = *std::min_element(members[r].begin(), members[r].end());
        if (m < best_min) {
          best_min = m;
          best_root = r;
        }
      }
      report.witness_block = members[best_root];
      std::sort(report.witness_block.begin(), report.witness_block.end());
      report.witness_scale = d.to_rational(scale);
      report.constant = detail::make_ratio(max_diam, scale);
    }
  }
}

}  // namespace

bool is_ultrametric(const MetricSpace& space) {
  return detail::with_view(space, [&](const auto& d) { return ultrametric_kernel(d, space.size()); });
}

std::optional<std::array<std::size_t, 4>> four_point_violation(const MetricSpace& space) {
  return detail::with_view(space,
                           [&](const auto& d) { return four_point_kernel(d, space.size()); });
}

bool is_zero_hyperbolic(const MetricSpace& space) { return !four_point_violation(space); }

Partition chain_components(const MetricSpace& space, const Rational& scale) {
  if (scale <= 0) throw Error(ErrorCode::NonPositiveScale, "chain scale must be positive");
  const std::size_t n = space.size();
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (space(i, j) <= scale) uf.unite(i, j);
  return partition_from(uf, n, scale);
}

Rational block_diameter(const MetricSpace& space, const std::vector<std::size_t>& block) {
  Rational best = 0;
  for (std::size_t a = 0; a < block.size(); ++a)
    for (std::size_t b = a + 1; b < block.size(); ++b)
      if (space(block[a], block[b]) > best) best = space(block[a], block[b]);
  return best;
}

NagataReport nagata_constant(const MetricSpace& space) {
  NagataReport report;
  report.separation = space.separation();
  report.diameter = space.diameter();
  report.is_ultrametric = is_ultrametric(space);
  report.is_zero_hyperbolic = is_zero_hyperbolic(space);
  if (space.size() < 2) {
    report.constant = 0;
    report.witness_scale = 0;
    return report;
  }
  detail::with_view(space, [&](const auto& d) { nagata_kernel(d, space.size(), report); });
  return report;
}

}  // namespace treeapprox
