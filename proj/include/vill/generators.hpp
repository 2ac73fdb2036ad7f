#pragma once

// Seeded generators for property runs. All draws go through Rng so that a
// recorded seed reproduces every randomized artifact byte for byte.

#include "vill/dimension_system.hpp"
#include "vill/matrix.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace vill::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform draw from [0, bound). bound must be positive. Uses rejection to
  /// stay implementation-independent (std distributions are not portable).
  std::uint64_t below(std::uint64_t bound);

  /// Uniform draw from [lo, hi] inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// Random valid system: at most max_levels levels, summand counts <= max_j,
/// level-1 dimensions <= max_n, multiplicities <= max_theta with no zero rows
/// or columns. Deeper order units are derived, so unitality holds exactly.
DimensionSystem random_system(Rng& rng, std::size_t max_levels, Eigen::Index max_j, int max_n,
                              int max_theta);

/// Random probability weights: `count` nonnegative rationals summing to 1,
/// with at least min_positive strictly positive entries.
RatVector random_weights(Rng& rng, Eigen::Index count, Eigen::Index min_positive = 1);

}  // namespace vill::gen
