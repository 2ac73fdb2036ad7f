#include "vill/dimension_system.hpp"

#include "vill/errors.hpp"

#include <algorithm>

namespace vill {

DimensionSystem::DimensionSystem(std::vector<LevelSpec> levels, std::optional<TailRule> tail)
    : levels_(std::move(levels)), tail_(std::move(tail)) {
  if (levels_.empty()) throw shape_error("a system needs at least one level");
  if (levels_.back().has_theta())
    throw shape_error("the last explicit level must not carry a multiplicity matrix; "
                      "add the target level explicitly or use a tail rule");
  for (std::size_t i = 0; i + 1 < levels_.size(); ++i)
    if (!levels_[i].has_theta())
      throw shape_error("missing multiplicity matrix at level " + std::to_string(i + 1));
  if (tail_ && tail_->steps.empty()) throw shape_error("tail rule with no steps");
}

bool DimensionSystem::level_exists(std::size_t i) const {
  return i < levels_.size() || tail_.has_value();
}

Eigen::Index DimensionSystem::j(std::size_t i) const { return n(i).size(); }

IntVector DimensionSystem::n(std::size_t i) const {
  if (i < levels_.size()) return levels_[i].n;
  if (!tail_) throw horizon_exceeded("level " + std::to_string(i + 1) + " beyond explicit levels");
  IntVector cur = levels_.back().n;
  for (std::size_t lvl = levels_.size() - 1; lvl < i; ++lvl) {
    IntMatrix th = theta(lvl);
    if (th.rows() != cur.size()) throw shape_error("tail step arity mismatch");
    cur = (th.transpose() * cur).eval();
  }
  return cur;
}

IntMatrix DimensionSystem::theta(std::size_t i) const {
  if (i + 1 < levels_.size()) return levels_[i].theta;
  if (!tail_) throw horizon_exceeded("no multiplicity matrix past level " + std::to_string(i + 1));
  std::size_t first_tail_step = levels_.size() - 1;
  return tail_->steps[(i - first_tail_step) % tail_->period()].theta;
}

IntMatrix DimensionSystem::eval_counts(std::size_t i) const {
  if (i + 1 < levels_.size()) {
    if (i < eval_counts_.size() && eval_counts_[i].size() > 0) return eval_counts_[i];
    return IntMatrix::Zero(levels_[i].theta.rows(), levels_[i].theta.cols());
  }
  IntMatrix th = theta(i);  // throws when the step does not exist
  if (tail_) {
    const IntMatrix& e = tail_->steps[(i - (levels_.size() - 1)) % tail_->period()].eval_counts;
    if (e.size() > 0) return e;
  }
  return IntMatrix::Zero(th.rows(), th.cols());
}

void DimensionSystem::set_eval_counts(std::vector<IntMatrix> counts) {
  if (counts.size() > levels_.size() - 1)
    throw shape_error("more eval-count matrices than explicit steps");
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i].size() == 0) continue;
    if (counts[i].rows() != levels_[i].theta.rows() || counts[i].cols() != levels_[i].theta.cols())
      throw shape_error("eval counts at step " + std::to_string(i + 1) + " have wrong shape");
    for (Eigen::Index k = 0; k < counts[i].rows(); ++k)
      for (Eigen::Index l = 0; l < counts[i].cols(); ++l)
        if (counts[i](k, l) < 0) throw shape_error("negative eval count");
  }
  eval_counts_ = std::move(counts);
}

bool DimensionSystem::has_eval_data() const {
  for (const auto& e : eval_counts_)
    if (e.size() > 0) return true;
  if (tail_)
    for (const auto& s : tail_->steps)
      if (s.eval_counts.size() > 0) return true;
  return false;
}

namespace {

void check_step(const IntVector& n_src, const IntMatrix& th, const IntVector& n_dst,
                std::size_t level, bool derived_target, ValidationReport& report) {
  if (th.rows() != n_src.size() || th.cols() != n_dst.size()) {
    report.violations.push_back({"shape",
                                 "theta at level " + std::to_string(level + 1) +
                                     " has wrong dimensions",
                                 level, -1, -1});
    return;
  }
  for (Eigen::Index k = 0; k < th.rows(); ++k)
    for (Eigen::Index l = 0; l < th.cols(); ++l)
      if (th(k, l) < 0)
        report.violations.push_back({"positivity",
                                     "negative multiplicity at (" + std::to_string(level + 1) +
                                         "," + std::to_string(k + 1) + "," + std::to_string(l + 1) +
                                         ")",
                                     level, k, l});
  for (Eigen::Index k = 0; k < th.rows(); ++k) {
    bool nonzero = false;
    for (Eigen::Index l = 0; l < th.cols(); ++l) nonzero = nonzero || th(k, l) > 0;
    if (!nonzero)
      report.violations.push_back({"zero_row",
                                   "summand " + std::to_string(k + 1) + " at level " +
                                       std::to_string(level + 1) + " maps nowhere",
                                   level, k, -1});
  }
  for (Eigen::Index l = 0; l < th.cols(); ++l) {
    bool nonzero = false;
    for (Eigen::Index k = 0; k < th.rows(); ++k) nonzero = nonzero || th(k, l) > 0;
    if (!nonzero)
      report.violations.push_back({"zero_column",
                                   "summand " + std::to_string(l + 1) + " at level " +
                                       std::to_string(level + 2) + " receives nothing",
                                   level, -1, l});
  }
  if (derived_target) return;  // unitality holds by construction for derived levels
  for (Eigen::Index l = 0; l < th.cols(); ++l) {
    Int sum = 0;
    for (Eigen::Index k = 0; k < th.rows(); ++k) sum += n_src(k) * th(k, l);
    if (sum != n_dst(l))
      report.violations.push_back({"unitality",
                                   "n mismatch at (" + std::to_string(level + 1) + "," +
                                       std::to_string(l + 1) + "): expected " + n_dst(l).str() +
                                       ", got " + sum.str(),
                                   level, -1, l});
  }
}

}  // namespace

ValidationReport validate(const DimensionSystem& sys, std::size_t horizon) {
  (void)horizon;
  ValidationReport report;
  const auto& levels = sys.levels();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].n.size() == 0) {
      report.violations.push_back({"shape", "empty level " + std::to_string(i + 1), i, -1, -1});
      continue;
    }
    for (Eigen::Index k = 0; k < levels[i].n.size(); ++k)
      if (levels[i].n(k) <= 0)
        report.violations.push_back({"positivity",
                                     "nonpositive dimension n(" + std::to_string(i + 1) + "," +
                                         std::to_string(k + 1) + ")",
                                     i, k, -1});
  }
  for (std::size_t i = 0; i + 1 < levels.size(); ++i)
    check_step(levels[i].n, levels[i].theta, levels[i + 1].n, i, false, report);

  if (sys.has_tail()) {
    const auto& steps = sys.tail()->steps;
    if (steps[0].theta.rows() != levels.back().n.size())
      report.violations.push_back(
          {"shape", "tail pattern does not match the last explicit level", levels.size() - 1, -1,
           -1});
    for (std::size_t s = 0; s < steps.size(); ++s) {
      Eigen::Index next_rows = steps[(s + 1) % steps.size()].theta.rows();
      if (steps[s].theta.cols() != next_rows)
        report.violations.push_back(
            {"shape", "tail pattern arity break after step " + std::to_string(s + 1), s, -1, -1});
      if (steps[s].eval_counts.size() > 0 &&
          (steps[s].eval_counts.rows() != steps[s].theta.rows() ||
           steps[s].eval_counts.cols() != steps[s].theta.cols()))
        report.violations.push_back(
            {"shape", "tail eval counts shape mismatch at step " + std::to_string(s + 1), s, -1,
             -1});
    }
    if (report.ok()) {
      // One unrolled period: entry signs and degeneracy checks on the pattern.
      std::size_t base = levels.size() - 1;
      for (std::size_t s = 0; s < steps.size(); ++s) {
        IntVector src = sys.n(base + s);
        IntMatrix th = sys.theta(base + s);
        IntVector dst = (th.transpose() * src).eval();
        check_step(src, th, dst, base + s, true, report);
      }
    }
  }

  // Growth heuristic: every available transition strictly increases the total
  // dimension. With positive order units that is equivalent to some row of the
  // step matrix having sum >= 2.
  if (report.ok()) {
    bool growing = true;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
      Int before = levels[i].n.sum(), after = levels[i + 1].n.sum();
      if (after <= before) growing = false;
    }
    if (sys.has_tail()) {
      IntMatrix period = sys.tail()->steps[0].theta;
      for (std::size_t s = 1; s < sys.tail()->period(); ++s)
        period = (period * sys.tail()->steps[s].theta).eval();
      bool some_row_grows = false;
      for (Eigen::Index k = 0; k < period.rows(); ++k) {
        Int row_sum = 0;
        for (Eigen::Index l = 0; l < period.cols(); ++l) row_sum += period(k, l);
        if (row_sum >= 2) some_row_grows = true;
      }
      growing = growing && some_row_grows;
    }
    report.infinite_dimensional_heuristic = growing;
  }
  return report;
}

IntMatrix composed_multiplicity(const DimensionSystem& sys, std::size_t i, std::size_t t) {
  if (t < 1) throw shape_error("span must be >= 1");
  if (!sys.level_exists(i + t))
    throw horizon_exceeded("composition needs level " + std::to_string(i + t + 1));
  IntMatrix out = sys.theta(i);
  for (std::size_t s = 1; s < t; ++s) out = (out * sys.theta(i + s)).eval();
  return out;
}

RatMatrix trace_pullback_matrix(const DimensionSystem& sys, std::size_t i, std::size_t t) {
  IntMatrix th = composed_multiplicity(sys, i, t);
  IntVector n_src = sys.n(i);
  IntVector n_dst = sys.n(i + t);
  RatMatrix out(th.rows(), th.cols());
  for (Eigen::Index k = 0; k < th.rows(); ++k)
    for (Eigen::Index l = 0; l < th.cols(); ++l)
      out(k, l) = Rational(n_src(k) * th(k, l), n_dst(l));
  return out;
}

SimplicityReport simplicity_verdict(const DimensionSystem& sys, std::size_t horizon) {
  SimplicityReport report;
  report.truncation_only = !sys.has_tail();
  if (sys.has_tail()) {
    IntMatrix period = sys.tail()->steps[0].theta;
    for (std::size_t s = 1; s < sys.tail()->period(); ++s)
      period = (period * sys.tail()->steps[s].theta).eval();
    report.verdict = is_primitive(period) ? SimplicityVerdict::SimplePeriodic
                                          : SimplicityVerdict::NotSimplePeriodic;
  }

  // Truncation witnesses: for each (level, summand), the earliest span whose
  // composed row is strictly positive, searched within levels < horizon.
  std::size_t max_level = horizon == 0 ? 1 : horizon;
  bool all_witnessed = true;
  for (std::size_t i = 0; i + 1 < max_level; ++i) {
    if (!sys.level_exists(i + 1)) break;
    std::vector<std::optional<std::size_t>> row_witness(static_cast<std::size_t>(sys.j(i)));
    IntMatrix composed;
    for (std::size_t t = 1; i + t < max_level && sys.level_exists(i + t); ++t) {
      composed = (t == 1) ? sys.theta(i) : IntMatrix((composed * sys.theta(i + t - 1)).eval());
      for (Eigen::Index k = 0; k < composed.rows(); ++k) {
        if (row_witness[static_cast<std::size_t>(k)]) continue;
        bool positive = true;
        for (Eigen::Index l = 0; l < composed.cols(); ++l) positive = positive && composed(k, l) > 0;
        if (positive) row_witness[static_cast<std::size_t>(k)] = t;
      }
    }
    for (const auto& w : row_witness) all_witnessed = all_witnessed && w.has_value();
    report.witnesses.push_back(std::move(row_witness));
  }
  if (!sys.has_tail())
    report.verdict = all_witnessed ? SimplicityVerdict::Simple : SimplicityVerdict::NotYetWitnessed;
  return report;
}

DiameterReport unique_trace_diagnostic(const DimensionSystem& sys, std::size_t horizon,
                                       const Rational& tol) {
  DiameterReport report;
  report.truncation_only = !sys.has_tail();
  bool below = false;
  for (std::size_t t = 1; t < horizon && sys.level_exists(t); ++t) {
    Rational d = l1_column_diameter(trace_pullback_matrix(sys, 0, t));
    below = below || d < tol;
    report.diameters.push_back(std::move(d));
  }
  if (sys.has_tail()) {
    IntMatrix period = sys.tail()->steps[0].theta;
    for (std::size_t s = 1; s < sys.tail()->period(); ++s)
      period = (period * sys.tail()->steps[s].theta).eval();
    report.verdict = is_primitive(period) ? UniqueTraceVerdict::UniqueTracePeriodic
                                          : UniqueTraceVerdict::NotContractivePeriodic;
  } else {
    report.verdict =
        below ? UniqueTraceVerdict::UniqueTraceLikely : UniqueTraceVerdict::NotYetBelowTolerance;
  }
  return report;
}

DimensionSystem single_summand_chain(const std::vector<Int>& thetas, const Int& n1) {
  std::vector<LevelSpec> levels;
  Int cur = n1;
  for (const Int& th : thetas) {
    LevelSpec spec;
    spec.n = IntVector::Constant(1, cur);
    spec.theta = IntMatrix::Constant(1, 1, th);
    levels.push_back(std::move(spec));
    cur *= th;
  }
  LevelSpec last;
  last.n = IntVector::Constant(1, cur);
  levels.push_back(std::move(last));
  return DimensionSystem(std::move(levels));
}

std::string to_string(SimplicityVerdict v) {
  switch (v) {
    case SimplicityVerdict::Simple: return "Simple";
    case SimplicityVerdict::NotYetWitnessed: return "NotYetWitnessed";
    case SimplicityVerdict::SimplePeriodic: return "SimplePeriodic";
    case SimplicityVerdict::NotSimplePeriodic: return "NotSimplePeriodic";
  }
  return "?";
}

std::string to_string(UniqueTraceVerdict v) {
  switch (v) {
    case UniqueTraceVerdict::UniqueTraceLikely: return "UniqueTraceLikely";
    case UniqueTraceVerdict::NotYetBelowTolerance: return "NotYetBelowTolerance";
    case UniqueTraceVerdict::UniqueTracePeriodic: return "UniqueTracePeriodic";
    case UniqueTraceVerdict::NotContractivePeriodic: return "NotContractivePeriodic";
  }
  return "?";
}

}  // namespace vill
