#pragma once

// Uniform access to a metric either through its scaled int64 table or through
// exact rationals, so hot loops can be written once as templates.

#include <cstddef>
#include <cstdint>
#include <utility>

#include "treeapprox/metric_space.hpp"
#include "treeapprox/rational.hpp"

namespace treeapprox::detail {

struct IntView {
  using value_type = std::int64_t;
  const std::int64_t* values;
  std::size_t n;
  const mpz_class* denominator;

  std::int64_t operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
  Rational to_rational(std::int64_t v) const {
    Rational r{mpz_class(v), *denominator};
    r.canonicalize();
    return r;
  }
  static std::int64_t zero() { return 0; }
};

struct RationalView {
  using value_type = Rational;
  const MetricSpace* space;

  const Rational& operator()(std::size_t i, std::size_t j) const { return (*space)(i, j); }
  Rational to_rational(const Rational& v) const { return v; }
  static Rational zero() { return Rational(0); }
};

// a/b < c/d for positive b, d.
inline bool ratio_less(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return static_cast<__int128>(a) * d < static_cast<__int128>(c) * b;
}
inline bool ratio_less(const Rational& a, const Rational& b, const Rational& c,
                       const Rational& d) {
  return a * d < c * b;
}

inline Rational make_ratio(std::int64_t a, std::int64_t b) {
  Rational r{mpz_class(a), mpz_class(b)};
  r.canonicalize();
  return r;
}
inline Rational make_ratio(const Rational& a, const Rational& b) { return a / b; }

template <class F>
decltype(auto) with_view(const MetricSpace& space, F&& f) {
  if (const auto* s = space.scaled())
    return std::forward<F>(f)(IntView{s->values.data(), space.size(), &s->denominator});
  return std::forward<F>(f)(RationalView{&space});
}

}  // namespace treeapprox::detail
