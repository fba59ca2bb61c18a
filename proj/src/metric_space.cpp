#include "treeapprox/metric_space.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "treeapprox/error.hpp"

namespace treeapprox {

namespace {

constexpr std::int64_t kScaledLimit = std::int64_t{1} << 62;

std::optional<ScaledDistances> try_scale(const std::vector<Rational>& dist,
                                         std::size_t n) {
  mpz_class denominator = 1;
  for (const auto& d : dist) {
    mpz_lcm(denominator.get_mpz_t(), denominator.get_mpz_t(),
            d.get_den_mpz_t());
    if (mpz_sizeinbase(denominator.get_mpz_t(), 2) > 62) return std::nullopt;
  }
  ScaledDistances scaled;
  scaled.denominator = denominator;
  scaled.values.reserve(dist.size());
  const mpz_class limit = mpz_class(kScaledLimit) / mpz_class(std::max<std::size_t>(n, 1));
  for (const auto& d : dist) {
    mpz_class v = d.get_num() * (denominator / d.get_den());
    if (v > limit) return std::nullopt;
    scaled.values.push_back(to_int64(v));
  }
  return scaled;
}

}  // namespace

std::optional<std::size_t> MetricSpace::index_of(std::string_view label) const {
  auto it = std::lower_bound(order_.begin(), order_.end(), label,
                             [&](std::size_t i, std::string_view l) {
                               return labels_[i] < l;
                             });
  if (it == order_.end() || labels_[*it] != label) return std::nullopt;
  return *it;
}

void MetricSpace::finalize() {
  const std::size_t n = size();
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0);
  std::sort(order_.begin(), order_.end(),
            [&](std::size_t a, std::size_t b) { return labels_[a] < labels_[b]; });
  rank_.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) rank_[order_[r]] = r;

  distinct_.clear();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) distinct_.push_back((*this)(i, j));
  std::sort(distinct_.begin(), distinct_.end());
  distinct_.erase(std::unique(distinct_.begin(), distinct_.end()), distinct_.end());
  separation_ = distinct_.empty() ? Rational(0) : distinct_.front();
  diameter_ = distinct_.empty() ? Rational(0) : distinct_.back();
  scaled_ = try_scale(dist_, n);
}

MetricSpace MetricSpace::subspace(std::span<const std::size_t> indices) const {
  MetricSpace sub;
  const std::size_t m = indices.size();
  if (m == 0) throw Error(ErrorCode::MalformedInput, "empty subspace");
  std::unordered_set<std::size_t> seen;
  for (std::size_t i : indices) {
    if (i >= size()) throw Error(ErrorCode::OutOfRange, "subspace index out of range");
    if (!seen.insert(i).second)
      throw Error(ErrorCode::DuplicateLabel, "repeated point in subspace: " + labels_[i]);
    sub.labels_.push_back(labels_[i]);
  }
  sub.dist_.resize(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) sub.dist_[a * m + b] = (*this)(indices[a], indices[b]);
  sub.finalize();
  return sub;
}

LabeledMatrix MetricSpace::to_matrix() const {
  LabeledMatrix out;
  out.labels = labels_;
  const std::size_t n = size();
  out.rows.assign(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.rows[i][j] = (*this)(i, j);
  return out;
}

MetricSpace validate_metric(LabeledMatrix raw) {
  const std::size_t n = raw.labels.size();
  if (n == 0) throw Error(ErrorCode::MalformedInput, "metric has no points");
  if (raw.rows.size() != n)
    throw Error(ErrorCode::MalformedInput, "matrix row count does not match label count");
  for (const auto& row : raw.rows)
    if (row.size() != n) throw Error(ErrorCode::MalformedInput, "matrix is not square");

  {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return raw.labels[a] < raw.labels[b]; });
    for (std::size_t k = 1; k < n; ++k)
      if (raw.labels[idx[k]] == raw.labels[idx[k - 1]])
        throw Error(ErrorCode::DuplicateLabel, "duplicate label: " + raw.labels[idx[k]],
                    {idx[k - 1], idx[k]});
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (raw.rows[i][i] != 0)
      throw Error(ErrorCode::MalformedInput, "nonzero diagonal at " + raw.labels[i], {i});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (raw.rows[i][j] != raw.rows[j][i])
        throw Error(ErrorCode::AsymmetricMatrix,
                    "d(" + raw.labels[i] + "," + raw.labels[j] + ") != d(" +
                        raw.labels[j] + "," + raw.labels[i] + ")",
                    {i, j});
      if (raw.rows[i][j] <= 0)
        throw Error(ErrorCode::NegativeOrZeroOffDiagonal,
                    "non-positive distance between " + raw.labels[i] + " and " +
                        raw.labels[j],
                    {i, j});
    }
  }

  MetricSpace space;
  space.labels_ = std::move(raw.labels);
  space.dist_.reserve(n * n);
  for (auto& row : raw.rows)
    for (auto& v : row) space.dist_.push_back(std::move(v));
  space.finalize();

  auto triangle_error = [&](std::size_t i, std::size_t k, std::size_t j) {
    return Error(ErrorCode::TriangleViolation,
                 "triangle inequality fails: d(" + space.label(i) + "," + space.label(j) +
                     ") > d(" + space.label(i) + "," + space.label(k) + ") + d(" +
                     space.label(k) + "," + space.label(j) + ")",
                 {i, k, j});
  };

  if (const auto* scaled = space.scaled()) {
    const auto& v = scaled->values;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::int64_t dij = v[i * n + j];
        for (std::size_t k = 0; k < n; ++k)
          if (dij > v[i * n + k] + v[k * n + j]) throw triangle_error(i, k, j);
      }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (space(i, j) > space(i, k) + space(k, j)) throw triangle_error(i, k, j);
  }
  return space;
}

}  // namespace treeapprox
