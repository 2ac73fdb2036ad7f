#pragma once

// The Bratteli-diagram skeleton: dimension vectors n_{i,k} per level and
// multiplicity matrices theta_i between adjacent levels, with an optional
// eventually-periodic tail. Multiplicity matrices are stored [source k][target l],
// so theta(i) has j(i) rows and j(i+1) columns. Levels are 0-based in code;
// reports print 1-based coordinates.

#include "vill/matrix.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace vill {

struct LevelSpec {
  IntVector n;       // order unit: j positive integers
  IntMatrix theta;   // j x j' multiplicities to the next level; 0x0 on the last level
  bool has_theta() const { return theta.size() > 0; }
};

/// One periodic step: a multiplicity matrix plus (for AF-Villadsen systems)
/// a matching matrix of point-evaluation counts.
struct TailStep {
  IntMatrix theta;
  IntMatrix eval_counts;  // same shape as theta, or 0x0 when absent
};

struct TailRule {
  std::vector<TailStep> steps;  // repeated forever after the last explicit level
  std::size_t period() const { return steps.size(); }
};

struct Violation {
  std::string code;     // "positivity", "unitality", "zero_row", "zero_column", "shape"
  std::string message;  // human-readable, 1-based coordinates
  std::size_t level = 0;
  Eigen::Index k = -1;
  Eigen::Index l = -1;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool infinite_dimensional_heuristic = false;
  bool ok() const { return violations.empty(); }
};

class DimensionSystem {
 public:
  DimensionSystem() = default;
  DimensionSystem(std::vector<LevelSpec> levels, std::optional<TailRule> tail = std::nullopt);

  std::size_t explicit_levels() const { return levels_.size(); }
  bool has_tail() const { return tail_.has_value(); }
  const std::optional<TailRule>& tail() const { return tail_; }
  const std::vector<LevelSpec>& levels() const { return levels_; }

  /// True when level i is explicit or reachable through the tail rule.
  bool level_exists(std::size_t i) const;

  /// Summand count, order unit and outgoing multiplicity matrix at level i,
  /// unrolling the tail rule when needed. theta(i) requires level i+1 to exist.
  Eigen::Index j(std::size_t i) const;
  IntVector n(std::size_t i) const;
  IntMatrix theta(std::size_t i) const;

  /// Point-evaluation counts attached to step i (zero matrix when none given).
  IntMatrix eval_counts(std::size_t i) const;
  void set_eval_counts(std::vector<IntMatrix> counts);
  bool has_eval_data() const;

 private:
  std::vector<LevelSpec> levels_;
  std::vector<IntMatrix> eval_counts_;  // parallel to explicit steps; may be empty
  std::optional<TailRule> tail_;
};

/// Lists every violated invariant; an empty report means the system is valid.
ValidationReport validate(const DimensionSystem& sys, std::size_t horizon = 0);

/// Composed multiplicity matrix theta_{i,i+t-1} spanning levels i..i+t (t >= 1).
IntMatrix composed_multiplicity(const DimensionSystem& sys, std::size_t i, std::size_t t);

/// Column-stochastic matrix pulling level-(i+t) scalar tuples back to level i:
/// entry (k,l) = n_{i,k} * theta_{i,i+t-1;k,l} / n_{i+t,l}.
RatMatrix trace_pullback_matrix(const DimensionSystem& sys, std::size_t i, std::size_t t);

enum class SimplicityVerdict { Simple, NotYetWitnessed, SimplePeriodic, NotSimplePeriodic };

struct SimplicityReport {
  SimplicityVerdict verdict;
  bool truncation_only;  // true when no tail rule backs the verdict
  // earliest span t (1-based) witnessing an all-positive composed row, per (level, summand)
  std::vector<std::vector<std::optional<std::size_t>>> witnesses;
};

SimplicityReport simplicity_verdict(const DimensionSystem& sys, std::size_t horizon);

enum class UniqueTraceVerdict {
  UniqueTraceLikely,
  NotYetBelowTolerance,
  UniqueTracePeriodic,
  NotContractivePeriodic,
};

struct DiameterReport {
  std::vector<Rational> diameters;  // l1 diameter of pullback columns, per span t = 1..
  UniqueTraceVerdict verdict;
  bool truncation_only;
};

/// Per-span l1 diameters of the image of the trace simplex under pullback to
/// level 0; an upper bound on how far apart surviving traces can be.
DiameterReport unique_trace_diagnostic(const DimensionSystem& sys, std::size_t horizon,
                                       const Rational& tol);

std::string to_string(SimplicityVerdict v);
std::string to_string(UniqueTraceVerdict v);

/// Single-summand tower with the given step multiplicities; order units are
/// derived from n1 by unitality.
DimensionSystem single_summand_chain(const std::vector<Int>& thetas, const Int& n1 = Int(1));

}  // namespace vill
