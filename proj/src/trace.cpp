#include "vill/trace.hpp"

#include "vill/errors.hpp"

#include <algorithm>

namespace vill {

void check_level_trace(const DimensionSystem& sys, const LevelTrace& trace) {
  IntVector n = sys.n(trace.level);
  if (trace.lambda.size() != n.size())
    throw shape_error("lambda size != summand count at level " + std::to_string(trace.level + 1));
  Rational sum = 0;
  for (Eigen::Index k = 0; k < trace.lambda.size(); ++k) {
    if (trace.lambda(k) < 0) throw shape_error("negative weight");
    sum += trace.lambda(k);
  }
  if (sum != 1) throw shape_error("weights must sum to exactly 1");
  if (static_cast<Eigen::Index>(trace.measures.size()) != n.size())
    throw shape_error("measure count != summand count");
  for (Eigen::Index k = 0; k < n.size(); ++k)
    if (trace.measures[static_cast<std::size_t>(k)].length() !=
        static_cast<Eigen::Index>(static_cast<long>(n(k))))
      throw shape_error("measure word length mismatch at summand " + std::to_string(k + 1));
}

TraceTower::TraceTower(std::size_t base_level, std::vector<LevelTrace> levels)
    : base_(base_level), levels_(std::move(levels)) {
  if (levels_.empty()) throw shape_error("a tower needs at least one level");
  for (std::size_t i = 0; i < levels_.size(); ++i)
    if (levels_[i].level != base_ + i) throw shape_error("tower levels must be consecutive");
}

const LevelTrace& TraceTower::at(std::size_t level) const {
  if (level < base_ || level > top_level()) throw shape_error("level outside tower");
  return levels_[level - base_];
}

ValidationReport validate_af_trace(const DimensionSystem& sys, const AFTrace& af) {
  ValidationReport report;
  for (std::size_t i = 0; i < af.alpha.size(); ++i) {
    if (af.alpha[i].size() != sys.j(i)) {
      report.violations.push_back({"shape", "alpha tuple size at level " + std::to_string(i + 1), i,
                                   -1, -1});
      continue;
    }
    Rational sum = 0;
    for (Eigen::Index k = 0; k < af.alpha[i].size(); ++k) {
      if (af.alpha[i](k) < 0)
        report.violations.push_back({"positivity", "negative alpha", i, k, -1});
      sum += af.alpha[i](k);
    }
    if (sum != 1)
      report.violations.push_back({"normalization", "alpha sum != 1 at level " + std::to_string(i + 1),
                                   i, -1, -1});
  }
  for (std::size_t i = 0; i + 1 < af.alpha.size(); ++i) {
    RatVector pulled = trace_pullback_matrix(sys, i, 1) * af.alpha[i + 1];
    if (pulled != af.alpha[i])
      report.violations.push_back(
          {"consistency", "alpha tuples not pullback-consistent at level " + std::to_string(i + 1),
           i, -1, -1});
  }
  return report;
}

std::vector<std::vector<std::pair<Eigen::Index, Eigen::Index>>> composed_block_layout(
    const DimensionSystem& sys, std::size_t i, std::size_t t) {
  if (t < 1) throw shape_error("span must be >= 1");
  IntMatrix th = sys.theta(i);
  IntVector n_src = sys.n(i);
  std::vector<std::vector<std::pair<Eigen::Index, Eigen::Index>>> layout(
      static_cast<std::size_t>(th.cols()));
  for (Eigen::Index l = 0; l < th.cols(); ++l) {
    Eigen::Index offset = 0;
    for (Eigen::Index k = 0; k < th.rows(); ++k) {
      long count = static_cast<long>(th(k, l));
      long width = static_cast<long>(n_src(k));
      for (long m = 0; m < count; ++m) {
        layout[static_cast<std::size_t>(l)].emplace_back(k, offset);
        offset += width;
      }
    }
  }
  if (t == 1) return layout;
  // Expand the one-step layout at level i+1: each level-(i+1) block becomes a
  // shifted copy of the remaining span's layout for its summand.
  auto tail = composed_block_layout(sys, i, t - 1);
  auto outer = composed_block_layout(sys, i + t - 1, 1);
  std::vector<std::vector<std::pair<Eigen::Index, Eigen::Index>>> out(outer.size());
  for (std::size_t l = 0; l < outer.size(); ++l)
    for (const auto& [mid_summand, mid_offset] : outer[l])
      for (const auto& [src_summand, src_offset] : tail[static_cast<std::size_t>(mid_summand)])
        out[l].emplace_back(src_summand, mid_offset + src_offset);
  return out;
}

LevelTrace pullback_step(const DimensionSystem& sys, const LevelTrace& target) {
  if (target.level == 0) throw shape_error("cannot pull back below the first level");
  std::size_t i = target.level - 1;
  check_level_trace(sys, target);

  IntMatrix th = sys.theta(i);
  IntVector n_src = sys.n(i);
  IntVector n_dst = sys.n(i + 1);
  RatMatrix pullback_m = trace_pullback_matrix(sys, i, 1);

  LevelTrace out;
  out.level = i;
  out.lambda = pullback_m * target.lambda;
  out.unconstrained.assign(static_cast<std::size_t>(th.rows()), false);

  int alphabet = target.measures.empty() ? 1 : target.measures[0].alphabet();
  for (Eigen::Index k = 0; k < th.rows(); ++k) {
    if (out.lambda(k) == 0) {
      out.measures.push_back(Measure::uniform(alphabet, static_cast<Eigen::Index>(static_cast<long>(n_src(k)))));
      out.unconstrained[static_cast<std::size_t>(k)] = true;
      continue;
    }
    std::vector<Measure> parts;
    std::vector<Rational> weights;
    for (Eigen::Index l = 0; l < th.cols(); ++l) {
      if (target.lambda(l) == 0 || th(k, l) == 0) continue;
      // Canonical one-step blocks of summand k inside target summand l are
      // consecutive runs; enumerate and project.
      Eigen::Index offset = 0;
      for (Eigen::Index kk = 0; kk < k; ++kk)
        offset += static_cast<Eigen::Index>(static_cast<long>(th(kk, l) * n_src(kk)));
      long count = static_cast<long>(th(k, l));
      long width = static_cast<long>(n_src(k));
      Rational weight = target.lambda(l) * Rational(n_src(k), n_dst(l));
      for (long m = 0; m < count; ++m) {
        std::vector<Eigen::Index> coords(static_cast<std::size_t>(width));
        for (long c = 0; c < width; ++c)
          coords[static_cast<std::size_t>(c)] = offset + static_cast<Eigen::Index>(m * width + c);
        parts.push_back(marginal_block(target.measures[static_cast<std::size_t>(l)], coords));
        weights.push_back(weight);
      }
    }
    RatVector w(static_cast<Eigen::Index>(weights.size()));
    for (Eigen::Index idx = 0; idx < w.size(); ++idx)
      w(idx) = weights[static_cast<std::size_t>(idx)] / out.lambda(k);
    out.measures.push_back(convex_combination(parts, w));
  }
  return out;
}

LevelTrace pullback(const DimensionSystem& sys, const LevelTrace& target, std::size_t t) {
  if (t < 1) throw shape_error("span must be >= 1");
  if (target.level < t) throw shape_error("span exceeds target level");
  LevelTrace cur = target;
  for (std::size_t s = 0; s < t; ++s) cur = pullback_step(sys, cur);
  return cur;
}

TraceTower extend_af_trace(const DimensionSystem& sys, const AFTrace& af,
                           const std::vector<Measure>& level0_seeds) {
  if (af.alpha.empty()) throw shape_error("empty AF trace");
  auto af_report = validate_af_trace(sys, af);
  if (!af_report.ok())
    throw shape_error("inconsistent AF trace: " + af_report.violations[0].message);
  if (static_cast<Eigen::Index>(level0_seeds.size()) != sys.j(0))
    throw shape_error("need one seed measure per level-1 summand");

  std::vector<LevelTrace> levels;
  LevelTrace base;
  base.level = 0;
  base.lambda = af.alpha[0];
  base.measures = level0_seeds;
  base.unconstrained.assign(level0_seeds.size(), false);
  check_level_trace(sys, base);
  levels.push_back(std::move(base));

  for (std::size_t i = 0; i + 1 < af.alpha.size(); ++i) {
    IntMatrix th = sys.theta(i);
    LevelTrace next;
    next.level = i + 1;
    next.lambda = af.alpha[i + 1];
    next.unconstrained.assign(static_cast<std::size_t>(th.cols()), false);
    for (Eigen::Index l = 0; l < th.cols(); ++l) {
      std::vector<Measure> factors;
      for (Eigen::Index k = 0; k < th.rows(); ++k)
        for (long m = 0; m < static_cast<long>(th(k, l)); ++m)
          factors.push_back(levels[i].measures[static_cast<std::size_t>(k)]);
      next.measures.push_back(Measure::product(std::move(factors)));
    }
    check_level_trace(sys, next);
    levels.push_back(std::move(next));
  }
  return TraceTower(0, std::move(levels));
}

bool tower_consistent(const DimensionSystem& sys, const TraceTower& tower) {
  for (std::size_t level = tower.top_level(); level > tower.base_level(); --level) {
    LevelTrace pulled = pullback_step(sys, tower.at(level));
    const LevelTrace& stored = tower.at(level - 1);
    if (pulled.lambda != stored.lambda) return false;
    for (std::size_t k = 0; k < pulled.measures.size(); ++k) {
      if (pulled.unconstrained[k]) continue;  // weight-zero summand: any measure is consistent
      if (!measure_equal(pulled.measures[k], stored.measures[k])) return false;
    }
  }
  return true;
}

bool fiber_check(const TraceTower& tower, const AFTrace& af) {
  if (af.depth() < tower.top_level() + 1) return false;
  for (std::size_t level = tower.base_level(); level <= tower.top_level(); ++level)
    if (tower.at(level).lambda != af.alpha[level]) return false;
  return true;
}

TraceTower convex_combine(const std::vector<TraceTower>& towers, const RatVector& weights) {
  if (towers.empty() || static_cast<Eigen::Index>(towers.size()) != weights.size())
    throw shape_error("need one weight per tower");
  for (const auto& t : towers) {
    if (t.base_level() != towers[0].base_level() || t.depth() != towers[0].depth())
      throw shape_error("towers must cover the same levels");
    for (std::size_t level = t.base_level(); level <= t.top_level(); ++level)
      if (t.at(level).lambda != towers[0].at(level).lambda)
        throw fiber_mismatch("towers lie in different fibers at level " + std::to_string(level + 1));
  }
  std::vector<LevelTrace> levels;
  for (std::size_t level = towers[0].base_level(); level <= towers[0].top_level(); ++level) {
    LevelTrace combined;
    combined.level = level;
    combined.lambda = towers[0].at(level).lambda;
    std::size_t summands = towers[0].at(level).measures.size();
    for (std::size_t k = 0; k < summands; ++k) {
      std::vector<Measure> parts;
      for (const auto& t : towers) parts.push_back(t.at(level).measures[k]);
      combined.measures.push_back(convex_combination(parts, weights));
      bool all_flagged = true;
      for (const auto& t : towers) all_flagged = all_flagged && t.at(level).unconstrained[k];
      combined.unconstrained.push_back(all_flagged);
    }
    levels.push_back(std::move(combined));
  }
  return TraceTower(towers[0].base_level(), std::move(levels));
}

bool is_extreme_truncation(const TraceTower& tower, std::size_t from_level) {
  std::size_t start = std::max(from_level, tower.base_level());
  for (std::size_t level = start; level <= tower.top_level(); ++level)
    for (const auto& m : tower.at(level).measures)
      if (!m.is_point_mass()) return false;
  return true;
}

Rational observable_value(const Observable& obs, const Word& word) {
  auto it = obs.values.find(word);
  return it == obs.values.end() ? Rational(0) : it->second;
}

Rational observed_sup(const Observable& obs) {
  Rational sup = 0;
  for (const auto& [word, value] : obs.values) {
    Rational a = rational_abs(value);
    if (a > sup) sup = a;
  }
  return sup;
}

Rational integrate(const Measure& measure, const Observable& obs) {
  if (measure.length() != obs.length || measure.alphabet() != obs.alphabet)
    throw shape_error("observable shape mismatch");
  Rational sum = 0;
  for (const auto& [word, value] : obs.values) sum += measure.point_mass(word) * value;
  return sum;
}

Rational evaluate(const LevelTrace& trace, const Observable& obs) {
  if (obs.summand < 0 || obs.summand >= trace.lambda.size())
    throw shape_error("observable summand out of range");
  return trace.lambda(obs.summand) *
         integrate(trace.measures[static_cast<std::size_t>(obs.summand)], obs);
}

Rational evaluate(const LevelTrace& trace, const ObservableGroup& group) {
  Rational sum = 0;
  for (const auto& component : group.components)
    if (component) sum += evaluate(trace, *component);
  return sum;
}

}  // namespace vill
