#include <doctest.h>

#include <vector>

#include "support.hpp"
#include "treeapprox/error.hpp"
#include "treeapprox/fixtures.hpp"
#include "treeapprox/metric_analysis.hpp"

using namespace treeapprox;

namespace {

std::vector<Rational> evens(int count) {
  std::vector<Rational> v;
  for (int k = 1; k <= count; ++k) v.emplace_back(2 * k);
  return v;
}

bool same_space(const MetricSpace& a, const MetricSpace& b) {
  auto ma = a.to_matrix(), mb = b.to_matrix();
  return ma.labels == mb.labels && ma.rows == mb.rows;
}

}  // namespace

TEST_CASE("binary leaves") {
  auto x1 = gen_binary_leaves(1);
  CHECK(x1.size() == 2);
  CHECK(x1(0, 1) == 2);

  auto x2 = gen_binary_leaves(2);
  auto ref = testsupport::x2();
  CHECK(same_space(x2, ref));

  auto x3 = gen_binary_leaves(3);
  CHECK(x3.diameter() == 6);
  CHECK(x3.separation() == 2);
  CHECK(is_ultrametric(x3));
  for (int n = 1; n <= 6; ++n) CHECK(gen_binary_leaves(n).distinct_distances() == evens(n));
  CHECK_THROWS_AS(gen_binary_leaves(0), Error);
  CHECK_THROWS_AS(gen_binary_leaves(13), Error);
}

TEST_CASE("cycles") {
  auto c3 = gen_cycle(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(c3(i, j) == (i == j ? 0 : 1));
  auto c4 = gen_cycle(4);
  CHECK(c4(0, 1) == 1);
  CHECK(c4(0, 2) == 2);
  CHECK(c4(1, 3) == 2);
  CHECK(nagata_constant(gen_cycle(6)).constant == 3);
  CHECK(gen_cycle(12).label(3) == "03");
  CHECK_THROWS_AS(gen_cycle(2), Error);
}

TEST_CASE("2-adic truncations") {
  auto a1 = gen_adic(1);
  CHECK(a1.size() == 2);
  CHECK(a1(0, 1) == 1);
  auto a2 = gen_adic(2);
  CHECK(a2(0, 2) == testsupport::ratio(1, 2));
  CHECK(a2(0, 1) == 1);
  auto a3 = gen_adic(3);
  CHECK(a3.size() == 8);
  CHECK(a3.distinct_distances() == std::vector<Rational>{testsupport::ratio(1, 4), testsupport::ratio(1, 2), Rational(1)});
  for (int k = 1; k <= 6; ++k) CHECK(is_ultrametric(gen_adic(k)));
  CHECK_THROWS_AS(gen_adic(8), Error);
}

TEST_CASE("example33 family") {
  auto e = gen_example33(3);
  CHECK(e.size() == 8);
  auto at = [&](const char* a, const char* b) { return e(*e.index_of(a), *e.index_of(b)); };
  CHECK(at("000", "001") == 2);
  CHECK(at("000", "010") == 4);
  CHECK(at("000", "100") == 8);
  CHECK(e.separation() == 2);
  CHECK(e.diameter() == 8);
  CHECK(gen_example33(4).diameter() == 16);
  for (int n = 3; n <= 7; ++n) {
    std::vector<Rational> expected;
    for (int k = 1; k <= n; ++k) expected.push_back(pow2(k));
    CHECK(gen_example33(n).distinct_distances() == expected);
  }
  CHECK_THROWS_AS(gen_example33(2), Error);
}

TEST_CASE("random families") {
  auto two = gen_random_ultrametric(2, 9);
  CHECK(two(0, 1) > 0);
  CHECK(is_ultrametric(two));
  CHECK(is_zero_hyperbolic(gen_random_treeset(2, 9)));
  CHECK(is_ultrametric(gen_random_ultrametric(64, 1)));
  CHECK(is_zero_hyperbolic(gen_random_treeset(64, 1)));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(is_ultrametric(gen_random_ultrametric(5 + 7 * seed, seed)));
    CHECK(is_zero_hyperbolic(gen_random_treeset(5 + 7 * seed, seed)));
  }
  CHECK(same_space(gen_random_ultrametric(40, 3), gen_random_ultrametric(40, 3)));
  CHECK(same_space(gen_random_treeset(40, 3), gen_random_treeset(40, 3)));
  CHECK_FALSE(same_space(gen_random_treeset(40, 3), gen_random_treeset(40, 4)));
  CHECK_THROWS_AS(gen_random_ultrametric(1, 0), Error);
  CHECK_THROWS_AS(gen_random_treeset(4097, 0), Error);
}

TEST_CASE("generate_fixture dispatch") {
  CHECK(generate_fixture("cycle", {5, std::nullopt, std::nullopt, 0}).size() == 5);
  CHECK(generate_fixture("adic", {std::nullopt, std::nullopt, 3, 0}).size() == 8);
  CHECK(generate_fixture("example33", {std::nullopt, 3, std::nullopt, 0}).size() == 8);
  CHECK(generate_fixture("binary-leaves", {2, std::nullopt, std::nullopt, 0}).size() == 4);
  CHECK(generate_fixture("random-treeset", {6, std::nullopt, std::nullopt, 2}).size() == 6);
  CHECK_THROWS_AS(generate_fixture("cycle", {}), Error);
  CHECK_THROWS_AS(generate_fixture("nope", {3, std::nullopt, std::nullopt, 0}), Error);
}
