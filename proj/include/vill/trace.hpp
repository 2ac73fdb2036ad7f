#pragma once

// Traces as towers of exact finite-level data. A level trace is a convex
// weight vector over summands plus one measure per summand; a tower is a run
// of consecutive level traces tied together by single-step pullbacks along
// canonical connecting maps. A trace on the canonical AF subalgebra is just
// the weight tuples.

#include "vill/dimension_system.hpp"
#include "vill/measure.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vill {

struct LevelTrace {
  std::size_t level = 0;  // absolute, 0-based
  RatVector lambda;       // nonnegative, sums to exactly 1
  std::vector<Measure> measures;       // one per summand; word length n_{i,k}
  std::vector<bool> unconstrained;     // true where lambda_k = 0 forced a default
};

/// Shape and normalization checks against the system; throws on failure.
void check_level_trace(const DimensionSystem& sys, const LevelTrace& trace);

class TraceTower {
 public:
  TraceTower(std::size_t base_level, std::vector<LevelTrace> levels);

  std::size_t base_level() const { return base_; }
  std::size_t top_level() const { return base_ + levels_.size() - 1; }
  std::size_t depth() const { return levels_.size(); }
  const LevelTrace& at(std::size_t level) const;
  const std::vector<LevelTrace>& levels() const { return levels_; }

 private:
  std::size_t base_;
  std::vector<LevelTrace> levels_;
};

struct AFTrace {
  std::vector<RatVector> alpha;  // weight tuple per level, from level 0
  std::size_t depth() const { return alpha.size(); }
};

/// Consecutive tuples must be related by the single-step pullback matrix.
ValidationReport validate_af_trace(const DimensionSystem& sys, const AFTrace& af);

/// Single-step pullback: the level-(i+1) trace determines the level-i trace
/// along the canonical connecting map. Weight-zero summands get the uniform
/// measure and an unconstrained flag.
LevelTrace pullback_step(const DimensionSystem& sys, const LevelTrace& target);

/// Span pullback: target at level i+t down to level i, by iterated steps.
LevelTrace pullback(const DimensionSystem& sys, const LevelTrace& target, std::size_t t);

/// The block layout of the composed map over levels i..i+t: for target summand
/// l, the ordered list of (source summand k, starting coordinate) runs, each of
/// width n_{i,k}. t = 1 gives the canonical single-step layout.
std::vector<std::vector<std::pair<Eigen::Index, Eigen::Index>>> composed_block_layout(
    const DimensionSystem& sys, std::size_t i, std::size_t t);

/// Traces on the AF subalgebra extend: the tower with the given weight tuples
/// whose level-0 measures are the seeds and whose deeper measures follow the
/// product recursion.
TraceTower extend_af_trace(const DimensionSystem& sys, const AFTrace& af,
                           const std::vector<Measure>& level0_seeds);

/// True iff every consecutive pair of levels satisfies the exact pullback
/// consistency (weights and measures).
bool tower_consistent(const DimensionSystem& sys, const TraceTower& tower);

/// True iff the tower's weight tuples equal the AF trace's tuples on every
/// level the tower covers.
bool fiber_check(const TraceTower& tower, const AFTrace& af);

/// Componentwise convex combination within one fiber; towers must share weight
/// tuples, base level and depth.
TraceTower convex_combine(const std::vector<TraceTower>& towers, const RatVector& weights);

/// True iff every summand measure at levels >= from_level is a point mass.
bool is_extreme_truncation(const TraceTower& tower, std::size_t from_level);

/// A test element against one summand: a value table on words (absent words
/// count as zero) together with a bound on |value|.
struct Observable {
  Eigen::Index summand = 0;
  int alphabet = 1;
  Eigen::Index length = 0;
  std::map<Word, Rational> values;
  Rational sup_bound = 1;
};

Rational observable_value(const Observable& obs, const Word& word);

/// Largest |value| over the table (0 for an empty table).
Rational observed_sup(const Observable& obs);

/// sum_w mu(w) value(w) without the summand weight.
Rational integrate(const Measure& measure, const Observable& obs);

/// lambda_k * sum_w mu_k(w) value(w); iterates the sparse value table, so
/// product-form measures of any length are fine.
Rational evaluate(const LevelTrace& trace, const Observable& obs);

/// One named test element b with one optional component per summand.
struct ObservableGroup {
  std::string name;
  std::vector<std::optional<Observable>> components;
};

/// tau(b) = sum_k lambda_k tau_k(b_k), absent components contributing zero.
Rational evaluate(const LevelTrace& trace, const ObservableGroup& group);

struct Neighborhood {
  Rational epsilon;
  std::vector<ObservableGroup> groups;
};

}  // namespace vill
