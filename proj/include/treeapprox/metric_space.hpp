#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treeapprox/rational.hpp"

namespace treeapprox {

// Unvalidated input: labels plus a square matrix of rationals.
struct LabeledMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> rows;
};

// All distances multiplied by their common denominator. Present only when
// every scaled value times the point count fits in 62 bits, so that sums along
// tree paths stay in int64 and cross-multiplied ratios stay in __int128.
struct ScaledDistances {
  mpz_class denominator;
  std::vector<std::int64_t> values;  // row-major, size n*n
};

class MetricSpace {
 public:
  std::size_t size() const noexcept { return labels_.size(); }

  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  const Rational& operator()(std::size_t i, std::size_t j) const {
    return dist_[i * size() + j];
  }

  // Position of point i when points are sorted by label. Used for every
  // "lexicographically smallest label" tie-break.
  std::size_t label_rank(std::size_t i) const { return rank_[i]; }
  // Point indices sorted by label.
  const std::vector<std::size_t>& label_order() const noexcept { return order_; }

  // Both are 0 for a single point.
  const Rational& separation() const noexcept { return separation_; }
  const Rational& diameter() const noexcept { return diameter_; }

  // Distinct off-diagonal values, ascending.
  const std::vector<Rational>& distinct_distances() const noexcept {
    return distinct_;
  }

  const ScaledDistances* scaled() const noexcept {
    return scaled_ ? &*scaled_ : nullptr;
  }

  // Induced subspace on `indices` (in the given order).
  MetricSpace subspace(std::span<const std::size_t> indices) const;

  LabeledMatrix to_matrix() const;

 private:
  friend MetricSpace validate_metric(LabeledMatrix raw);
  MetricSpace() = default;
  void finalize();

  std::vector<std::string> labels_;
  std::vector<Rational> dist_;
  std::vector<std::size_t> rank_;
  std::vector<std::size_t> order_;
  Rational separation_;
  Rational diameter_;
  std::vector<Rational> distinct_;
  std::optional<ScaledDistances> scaled_;
};

// Checks every MetricSpace invariant. Errors: MalformedInput, DuplicateLabel,
// AsymmetricMatrix, NegativeOrZeroOffDiagonal, TriangleViolation (witness is
// (x, via, y) with d(x,y) > d(x,via) + d(via,y)).
MetricSpace validate_metric(LabeledMatrix raw);

}  // namespace treeapprox
