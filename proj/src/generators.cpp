#include "vill/generators.hpp"

#include "vill/errors.hpp"

namespace vill::gen {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw shape_error("rng bound must be positive");
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

DimensionSystem random_system(Rng& rng, std::size_t max_levels, Eigen::Index max_j, int max_n,
                              int max_theta) {
  std::size_t level_count = static_cast<std::size_t>(rng.between(2, static_cast<std::int64_t>(max_levels)));
  std::vector<LevelSpec> levels(level_count);
  Eigen::Index j = rng.between(1, max_j);
  levels[0].n.resize(j);
  for (Eigen::Index k = 0; k < j; ++k) levels[0].n(k) = Int(rng.between(1, max_n));

  for (std::size_t i = 0; i + 1 < level_count; ++i) {
    Eigen::Index j_next = rng.between(1, max_j);
    IntMatrix th(j, j_next);
    // Rejection sample until no zero row and no zero column; tiny matrices
    // make this converge immediately.
    while (true) {
      for (Eigen::Index k = 0; k < j; ++k)
        for (Eigen::Index l = 0; l < j_next; ++l) th(k, l) = Int(rng.between(0, max_theta));
      bool degenerate = false;
      for (Eigen::Index k = 0; k < j && !degenerate; ++k) {
        bool nonzero = false;
        for (Eigen::Index l = 0; l < j_next; ++l) nonzero = nonzero || th(k, l) > 0;
        degenerate = !nonzero;
      }
      for (Eigen::Index l = 0; l < j_next && !degenerate; ++l) {
        bool nonzero = false;
        for (Eigen::Index k = 0; k < j; ++k) nonzero = nonzero || th(k, l) > 0;
        degenerate = !nonzero;
      }
      if (!degenerate) break;
    }
    levels[i].theta = th;
    levels[i + 1].n = (th.transpose() * levels[i].n).eval();
    j = j_next;
  }
  return DimensionSystem(std::move(levels));
}

RatVector random_weights(Rng& rng, Eigen::Index count, Eigen::Index min_positive) {
  if (min_positive < 1) min_positive = 1;
  if (min_positive > count) min_positive = count;
  RatVector w(count);
  Int total = 0;
  while (total == 0) {
    std::vector<Int> raw(static_cast<std::size_t>(count));
    Eigen::Index positive = 0;
    for (auto& x : raw) {
      x = Int(rng.between(0, 8));
      if (x > 0) ++positive;
    }
    if (positive < min_positive) continue;
    total = 0;
    for (const auto& x : raw) total += x;
    if (total == 0) continue;
    for (Eigen::Index i = 0; i < count; ++i) w(i) = Rational(raw[static_cast<std::size_t>(i)], total);
  }
  return w;
}

}  // namespace vill::gen
