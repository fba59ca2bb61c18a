#pragma once

// Seeded generator with platform-independent bounded draws. The standard
// distributions are implementation-defined, which would make fixtures differ
// between standard libraries.

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace treeapprox::detail {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // uniform in [0, bound), bound > 0, by rejection
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // uniform in [lo, hi]
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // uniform in [0, 1)
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // standard normal (Box-Muller on unit())
  double normal();

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

inline double Rng::normal() {
  double u = unit();
  while (u <= 0.0) u = unit();
  double w = unit();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * w);
}

}  // namespace treeapprox::detail
