#pragma once

// Constructive density of extreme traces: quantize each summand trace into
// point masses, push them up a deep enough composed map, and certify with
// exact arithmetic that the resulting extreme trace stays inside the requested
// neighborhood.

#include "vill/trace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vill {

/// Largest-remainder apportionment of a finitely supported measure into
/// `count` point masses: counts per atom summing to `count` with
/// |p(x) - c_x/count| < 1/count, ties broken by lowest atom index.
struct Apportionment {
  std::vector<std::pair<Word, long>> counts;  // in atom (lex) order
  long total = 0;
};

Apportionment quantize_measure(const Measure& measure, long count);

/// The apportionment as an ordered list of `total` point masses.
std::vector<Measure> expand_apportionment(const Apportionment& apportionment, int alphabet);

/// Smallest span t <= horizon with composed multiplicities strictly above the
/// per-source-summand thresholds for every target summand.
std::size_t choose_depth(const DimensionSystem& sys, std::size_t base,
                         const std::vector<Int>& thresholds, std::size_t horizon);

/// Tower from level base+span to af's top: level base+span measures are the
/// block products of the selections (one point mass per composed block),
/// deeper levels follow the product recursion. selections[k][l] lists the
/// point masses for the composed blocks of source summand k in target l.
TraceTower build_eta(const DimensionSystem& sys, std::size_t base, std::size_t span,
                     const std::vector<std::vector<std::vector<Measure>>>& selections,
                     const AFTrace& af);

struct SummandPlan {
  bool flagged = false;   // weight-zero summand: quantized but unconstrained
  Int support = 0;        // atom count of the densified summand trace
  Rational sup_bound = 0; // largest observable bound touching this summand
  Int threshold = 0;      // composed multiplicities must exceed this
};

struct DeviationCell {
  Eigen::Index k = 0, l = 0;
  Rational weight;            // alpha_l n_k theta_kl / n_l
  Rational summand_error;     // |tau_k(b_k) - average of selections(b_k)|
  Rational quantization_cap;  // sup_bound * support / theta_kl
};

struct GroupDeviation {
  std::string name;
  Rational tau_value;
  Rational eta_value;
  Rational deviation;              // |tau(b) - eta(b)|, exact
  Rational triangle_bound;         // sum of weight * summand_error
  std::vector<DeviationCell> cells;
};

struct PoulsenCertificate {
  std::size_t base_level = 0;  // i'
  std::size_t span = 0;        // t'
  Rational epsilon;
  std::vector<SummandPlan> plans;
  std::vector<std::vector<std::vector<Word>>> selections;  // [k][l][m] atoms
  std::vector<GroupDeviation> deviations;
  std::vector<Eigen::Index> flagged_summands;
  bool eta_extreme = false;
  bool eta_in_fiber = false;
  bool pass = false;
};

/// Full pipeline at the tower's base level. The horizon caps the span search;
/// the AF trace must reach the chosen level. forced_span skips the threshold
/// search (used for refinement experiments).
PoulsenCertificate certify(const DimensionSystem& sys, const TraceTower& tau,
                           const Neighborhood& nbhd, const AFTrace& af, std::size_t horizon,
                           std::optional<std::size_t> forced_span = std::nullopt);

/// Recomputes every group deviation from serialized selections alone. Used to
/// re-check a certificate bit for bit.
std::vector<Rational> recheck_deviations(const DimensionSystem& sys, const TraceTower& tau,
                                         const Neighborhood& nbhd, const AFTrace& af,
                                         std::size_t base, std::size_t span,
                                         const std::vector<std::vector<std::vector<Word>>>& selections);

}  // namespace vill
