#include "treeapprox/fixtures.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "treeapprox/detail/rng.hpp"
#include "treeapprox/error.hpp"

namespace treeapprox {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::OutOfRange, what);
}

std::string padded(std::size_t value, std::size_t count, std::string_view prefix = "") {
  std::size_t width = std::to_string(count > 0 ? count - 1 : 0).size();
  std::string digits = std::to_string(value);
  return std::string(prefix) + std::string(width - digits.size(), '0') + digits;
}

LabeledMatrix empty_matrix(std::size_t n) {
  LabeledMatrix m;
  m.labels.reserve(n);
  m.rows.assign(n, std::vector<Rational>(n, Rational(0)));
  return m;
}

void set(LabeledMatrix& m, std::size_t i, std::size_t j, const Rational& d) {
  m.rows[i][j] = d;
  m.rows[j][i] = d;
}

}  // namespace

MetricSpace gen_binary_leaves(int n) {
  require(n >= 1 && n <= 12, "binary-leaves needs 1 <= n <= 12");
  const std::size_t count = std::size_t{1} << n;
  LabeledMatrix m = empty_matrix(count);
  // bit k-1 from the left of the label is x_k
  for (std::size_t w = 0; w < count; ++w) {
    std::string label(static_cast<std::size_t>(n), '0');
    for (int k = 0; k < n; ++k)
      if (w >> (n - 1 - k) & 1) label[static_cast<std::size_t>(k)] = '1';
    m.labels.push_back(label);
  }
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = a + 1; b < count; ++b) {
      // last differing position = lowest differing bit of the word
      std::size_t diff = a ^ b;
      int k = n - __builtin_ctzll(diff);
      set(m, a, b, Rational(2 * k));
    }
  return validate_metric(std::move(m));
}

MetricSpace gen_cycle(int n) {
  require(n >= 3 && n <= 4096, "cycle needs 3 <= n <= 4096");
  const auto count = static_cast<std::size_t>(n);
  LabeledMatrix m = empty_matrix(count);
  for (std::size_t i = 0; i < count; ++i) m.labels.push_back(padded(i, count));
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j) set(m, i, j, Rational(std::min(j - i, count - (j - i))));
  return validate_metric(std::move(m));
}

MetricSpace gen_adic(int k) {
  require(k >= 1 && k <= 7, "adic needs 1 <= k <= 7");
  const std::size_t count = std::size_t{1} << k;
  LabeledMatrix m = empty_matrix(count);
  for (std::size_t i = 0; i < count; ++i) m.labels.push_back(padded(i, count));
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j) set(m, i, j, pow2(-__builtin_ctzll(j - i)));
  return validate_metric(std::move(m));
}

MetricSpace gen_example33(int N) {
  require(N >= 3 && N <= 12, "example33 needs 3 <= N <= 12");
  const std::size_t count = std::size_t{1} << N;
  // weight of the edge entering level l
  auto weight = [&](int level) { return level >= N - 1 ? Rational(1) : pow2(N - 1 - level); };
  // half the distance between leaves whose deepest common ancestor is at level a
  std::vector<Rational> half(static_cast<std::size_t>(N) + 1, Rational(0));
  for (int a = N - 1; a >= 0; --a) half[static_cast<std::size_t>(a)] = half[static_cast<std::size_t>(a) + 1] + weight(a + 1);
  LabeledMatrix m = empty_matrix(count);
  for (std::size_t w = 0; w < count; ++w) {
    std::string label(static_cast<std::size_t>(N), '0');
    for (int b = 0; b < N; ++b)
      if (w >> (N - 1 - b) & 1) label[static_cast<std::size_t>(b)] = '1';
    m.labels.push_back(label);
  }
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = a + 1; b < count; ++b) {
      int common = N - (64 - __builtin_clzll(a ^ b));  // shared prefix length
      set(m, a, b, 2 * half[static_cast<std::size_t>(common)]);
    }
  return validate_metric(std::move(m));
}

MetricSpace gen_random_ultrametric(std::size_t n, std::uint64_t seed) {
  require(n >= 2 && n <= 4096, "random-ultrametric needs 2 <= n <= 4096");
  detail::Rng rng(seed);
  std::vector<std::size_t> label_of(n);
  std::iota(label_of.begin(), label_of.end(), 0);
  rng.shuffle(label_of);

  LabeledMatrix m = empty_matrix(n);
  for (std::size_t i = 0; i < n; ++i) m.labels.push_back(padded(i, n, "u"));
  struct Block {
    std::size_t lo, hi;
    std::int64_t diameter;
  };
  std::vector<Block> stack{{0, n, std::int64_t{1} << 40}};
  while (!stack.empty()) {
    Block b = stack.back();
    stack.pop_back();
    const std::size_t mid = b.lo + (b.hi - b.lo) / 2;
    for (std::size_t i = b.lo; i < mid; ++i)
      for (std::size_t j = mid; j < b.hi; ++j) set(m, label_of[i], label_of[j], Rational(b.diameter));
    for (auto [lo, hi] : {std::pair{b.lo, mid}, std::pair{mid, b.hi}}) {
      if (hi - lo < 2) continue;
      std::int64_t d = rng.between((b.diameter + 1) / 2, b.diameter - 1);
      stack.push_back({lo, hi, d});
    }
  }
  return validate_metric(std::move(m));
}

MetricSpace gen_random_treeset(std::size_t n, std::uint64_t seed) {
  require(n >= 2 && n <= 4096, "random-treeset needs 2 <= n <= 4096");
  detail::Rng rng(seed);
  const std::size_t nodes = 2 * n;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> adj(nodes);
  for (std::size_t v = 1; v < nodes; ++v) {
    std::size_t p = rng.below(v);
    std::int64_t w = rng.between(1, 16);
    adj[v].push_back({p, w});
    adj[p].push_back({v, w});
  }
  std::vector<std::size_t> pick(nodes);
  std::iota(pick.begin(), pick.end(), 0);
  rng.shuffle(pick);
  pick.resize(n);

  LabeledMatrix m = empty_matrix(n);
  for (std::size_t i = 0; i < n; ++i) m.labels.push_back(padded(i, n, "t"));
  std::vector<std::int64_t> dist(nodes);
  std::vector<bool> seen(nodes);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), false);
    std::vector<std::size_t> stack{pick[i]};
    seen[pick[i]] = true;
    dist[pick[i]] = 0;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (auto [w, len] : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          dist[w] = dist[v] + len;
          stack.push_back(w);
        }
    }
    for (std::size_t j = 0; j < n; ++j) m.rows[i][j] = Rational(dist[pick[j]]);
  }
  return validate_metric(std::move(m));
}

MetricSpace generate_fixture(std::string_view family, const FixtureParams& p) {
  auto need = [&](const std::optional<int>& v, const char* name) {
    if (!v)
      throw Error(ErrorCode::MalformedInput,
                  "family " + std::string(family) + " needs --" + name);
    return *v;
  };
  auto count = [&](const std::optional<int>& v) {
    int n = need(v, "n");
    require(n >= 2, "n must be at least 2");
    return static_cast<std::size_t>(n);
  };
  if (family == "binary-leaves") return gen_binary_leaves(need(p.n, "n"));
  if (family == "cycle") return gen_cycle(need(p.n, "n"));
  if (family == "adic") return gen_adic(need(p.k, "k"));
  if (family == "example33") return gen_example33(need(p.N, "N"));
  if (family == "random-ultrametric") return gen_random_ultrametric(count(p.n), p.seed);
  if (family == "random-treeset") return gen_random_treeset(count(p.n), p.seed);
  throw Error(ErrorCode::MalformedInput, "unknown fixture family '" + std::string(family) + "'");
}

}  // namespace treeapprox
