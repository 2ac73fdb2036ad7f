#pragma once

// Exact probability measures on words over {1,...,m}, the trace model for
// tensor powers of a multi-matrix seed algebra. Three forms: a point mass, a
// sparse dense table, and a product of independent factors. Operations never
// materialize more than kAtomCap atoms; anything that would throws instead.

#include "vill/matrix.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace vill {

using Letter = std::int32_t;          // 0-based in code, 1-based in documents
using Word = std::vector<Letter>;

/// Largest number of atoms any operation may materialize (2^20).
Int atom_cap();

class Measure {
 public:
  enum class Kind { Dirac, Dense, Product };

  static Measure dirac(int alphabet, Word atom);
  /// Atoms must be nonnegative, nonempty, and sum to exactly 1; zero-mass
  /// entries are dropped.
  static Measure dense(int alphabet, Eigen::Index length, std::map<Word, Rational> atoms);
  static Measure product(std::vector<Measure> factors);
  /// Product of single-letter uniform factors, so arbitrary lengths stay cheap.
  static Measure uniform(int alphabet, Eigen::Index length);

  Kind kind() const { return kind_; }
  int alphabet() const { return alphabet_; }
  Eigen::Index length() const { return length_; }

  const Word& dirac_atom() const { return atom_; }
  const std::map<Word, Rational>& dense_atoms() const { return atoms_; }
  const std::vector<Measure>& factors() const { return factors_; }

  /// True for a point mass in any representation.
  bool is_point_mass() const;
  Word point_mass_atom() const;

  /// Upper bound on the support size (exact for Dirac/Dense).
  Int support_bound() const;

  /// Exact mass of a single word; cheap in every representation.
  Rational point_mass(const Word& word) const;

  /// Offsets 0 < c < length at which the measure provably factorizes.
  std::set<Eigen::Index> internal_cuts() const;

 private:
  Kind kind_ = Kind::Dirac;
  int alphabet_ = 1;
  Eigen::Index length_ = 0;
  Word atom_;                        // Dirac
  std::map<Word, Rational> atoms_;   // Dense
  std::vector<Measure> factors_;     // Product
};

/// Pushforward onto the given strictly increasing coordinate subset.
Measure marginal_block(const Measure& measure, const std::vector<Eigen::Index>& coords);

/// Support as an explicit atom list; throws cap_exceeded past atom_cap().
std::map<Word, Rational> enumerate_atoms(const Measure& measure);

/// Exact semantic equality. Splits both sides along shared factor boundaries
/// and compares segment atom tables; throws cap_exceeded when a shared segment
/// is too large to materialize.
bool measure_equal(const Measure& a, const Measure& b);

/// Exact convex combination; weights must sum to 1 and match measures in
/// count, all over one shape. Identical measures short-circuit densification.
Measure convex_combination(const std::vector<Measure>& measures, const RatVector& weights);

}  // namespace vill
