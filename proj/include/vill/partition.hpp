#pragma once

// Partition data behind the connecting-map seeds: for one step i -> i+1 and
// each (source summand k, target summand l), theta_{i;k,l} enumerated blocks
// of size n_{i,k} that jointly partition {0,...,n_{i+1,l}-1}. Connecting maps
// are evaluated symbolically on labeled elementary tensors; commutation of
// the permutation intertwining is symbol-list equality.

#include "vill/dimension_system.hpp"

#include <vector>

namespace vill {

/// A tensor factor: either the unit or a named generator carrying its source
/// coordinates (summand, position).
struct Symbol {
  bool unit = true;
  Eigen::Index k = -1;
  Eigen::Index t = -1;

  static Symbol unit_symbol() { return Symbol{}; }
  static Symbol generator(Eigen::Index k, Eigen::Index t) { return Symbol{false, k, t}; }
  friend bool operator==(const Symbol& a, const Symbol& b) {
    if (a.unit != b.unit) return false;
    return a.unit || (a.k == b.k && a.t == b.t);
  }
};

struct ElementaryTensorLabel {
  Eigen::Index summand = 0;
  std::vector<Symbol> word;
  friend bool operator==(const ElementaryTensorLabel& a, const ElementaryTensorLabel& b) {
    return a.summand == b.summand && a.word == b.word;
  }
};

/// All-generator and all-unit inputs for level i of a system.
ElementaryTensorLabel generator_label(const DimensionSystem& sys, std::size_t i, Eigen::Index k);
ElementaryTensorLabel unit_label(const DimensionSystem& sys, std::size_t i, Eigen::Index k);

struct PartitionScheme {
  std::size_t level = 0;  // the step i -> i+1 this scheme describes
  // blocks[k][l][m] is the enumerated block p_{i;k,l}^{(m,.)}, 0-based positions
  std::vector<std::vector<std::vector<std::vector<Eigen::Index>>>> blocks;
};

/// One permutation per summand of a level; perms[k][t] is the image of t.
struct LevelPermutationFamily {
  std::vector<std::vector<Eigen::Index>> perms;
};

LevelPermutationFamily identity_permutations(const DimensionSystem& sys, std::size_t i);

ValidationReport validate_partition(const PartitionScheme& scheme, const DimensionSystem& sys,
                                    std::size_t i);

/// Blocks laid out as consecutive runs: all blocks of summand 1, then summand 2,
/// and so on, each enumerated in increasing order.
PartitionScheme canonical_partition(const DimensionSystem& sys, std::size_t i);

/// Image of one elementary tensor per source summand under the seed defined by
/// the scheme: for each target summand l, the list of diagonal-block labels in
/// (k, m) order. Position s of block (k,m) carries the input's t-th factor iff
/// s is the t-th enumerated element of the block, and the unit otherwise.
std::vector<std::vector<ElementaryTensorLabel>> seed_image(
    const PartitionScheme& scheme, const DimensionSystem& sys, std::size_t i,
    const std::vector<ElementaryTensorLabel>& inputs);

/// The target-level permutation family gamma with
/// gamma_l(q_{i;k,l}^{(m,t)}) = p_{i;k,l}^{(m, sigma_k(t))}.
LevelPermutationFamily intertwiner(const PartitionScheme& scheme_p, const PartitionScheme& scheme_q,
                                   const LevelPermutationFamily& sigma, const DimensionSystem& sys,
                                   std::size_t i);

/// True iff permuting factors by gamma after the P-seed equals applying the
/// Q-seed after permuting by sigma, on every sample.
bool verify_commutation(const PartitionScheme& scheme_p, const PartitionScheme& scheme_q,
                        const LevelPermutationFamily& sigma, const LevelPermutationFamily& gamma,
                        const DimensionSystem& sys, std::size_t i,
                        const std::vector<std::vector<ElementaryTensorLabel>>& samples);

/// One sample per (summand, position): that generator alone, units elsewhere.
std::vector<std::vector<ElementaryTensorLabel>> single_generator_samples(const DimensionSystem& sys,
                                                                         std::size_t i);

namespace gen {
class Rng;
/// Seeded shuffle of the canonical scheme: random block contents and random
/// enumeration orders, still a valid partition.
PartitionScheme random_partition(Rng& rng, const DimensionSystem& sys, std::size_t i);
LevelPermutationFamily random_permutations(Rng& rng, const DimensionSystem& sys, std::size_t i);
}  // namespace gen

}  // namespace vill
