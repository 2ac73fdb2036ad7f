#include "vill/partition.hpp"

#include "vill/errors.hpp"
#include "vill/generators.hpp"

#include <algorithm>
#include <numeric>

namespace vill {

ElementaryTensorLabel generator_label(const DimensionSystem& sys, std::size_t i, Eigen::Index k) {
  ElementaryTensorLabel label;
  label.summand = k;
  Int n = sys.n(i)(k);
  for (Int t = 0; t < n; ++t)
    label.word.push_back(Symbol::generator(k, static_cast<Eigen::Index>(t)));
  return label;
}

ElementaryTensorLabel unit_label(const DimensionSystem& sys, std::size_t i, Eigen::Index k) {
  ElementaryTensorLabel label;
  label.summand = k;
  label.word.assign(static_cast<std::size_t>(sys.n(i)(k)), Symbol::unit_symbol());
  return label;
}

LevelPermutationFamily identity_permutations(const DimensionSystem& sys, std::size_t i) {
  LevelPermutationFamily family;
  IntVector n = sys.n(i);
  for (Eigen::Index k = 0; k < n.size(); ++k) {
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n(k)));
    std::iota(perm.begin(), perm.end(), 0);
    family.perms.push_back(std::move(perm));
  }
  return family;
}

ValidationReport validate_partition(const PartitionScheme& scheme, const DimensionSystem& sys,
                                    std::size_t i) {
  ValidationReport report;
  auto note = [&](const std::string& code, const std::string& msg, Eigen::Index k,
                  Eigen::Index l) {
    report.violations.push_back({code, msg, i, k, l});
  };

  IntMatrix th = sys.theta(i);
  IntVector n_src = sys.n(i);
  IntVector n_dst = sys.n(i + 1);
  Eigen::Index j_src = th.rows(), j_dst = th.cols();

  if (static_cast<Eigen::Index>(scheme.blocks.size()) != j_src) {
    note("shape", "scheme has wrong number of source summands", -1, -1);
    return report;
  }
  for (Eigen::Index k = 0; k < j_src; ++k)
    if (static_cast<Eigen::Index>(scheme.blocks[k].size()) != j_dst) {
      note("shape", "scheme has wrong number of target summands", k, -1);
      return report;
    }

  for (Eigen::Index l = 0; l < j_dst; ++l) {
    std::vector<int> hits(static_cast<std::size_t>(static_cast<long>(n_dst(l))), 0);
    for (Eigen::Index k = 0; k < j_src; ++k) {
      const auto& kl_blocks = scheme.blocks[k][l];
      if (static_cast<Eigen::Index>(kl_blocks.size()) != static_cast<Eigen::Index>(static_cast<long>(th(k, l))))
        note("block_count",
             "expected " + th(k, l).str() + " blocks at (" + std::to_string(i + 1) + "," +
                 std::to_string(k + 1) + "," + std::to_string(l + 1) + ")",
             k, l);
      for (const auto& block : kl_blocks) {
        if (static_cast<Eigen::Index>(block.size()) != static_cast<Eigen::Index>(static_cast<long>(n_src(k))))
          note("cardinality",
               "block size != n at (" + std::to_string(i + 1) + "," + std::to_string(k + 1) + "," +
                   std::to_string(l + 1) + ")",
               k, l);
        for (Eigen::Index s : block) {
          if (s < 0 || s >= static_cast<Eigen::Index>(hits.size())) {
            note("range", "position out of range", k, l);
            continue;
          }
          hits[static_cast<std::size_t>(s)] += 1;
        }
      }
    }
    for (std::size_t s = 0; s < hits.size(); ++s) {
      if (hits[s] > 1)
        note("disjointness",
             "position " + std::to_string(s + 1) + " covered " + std::to_string(hits[s]) +
                 " times at (" + std::to_string(i + 1) + "," + std::to_string(l + 1) + ")",
             -1, l);
      if (hits[s] == 0)
        note("coverage",
             "position " + std::to_string(s + 1) + " uncovered at (" + std::to_string(i + 1) + "," +
                 std::to_string(l + 1) + ")",
             -1, l);
    }
  }
  return report;
}

PartitionScheme canonical_partition(const DimensionSystem& sys, std::size_t i) {
  PartitionScheme scheme;
  scheme.level = i;
  IntMatrix th = sys.theta(i);
  IntVector n_src = sys.n(i);
  scheme.blocks.resize(static_cast<std::size_t>(th.rows()));
  for (Eigen::Index k = 0; k < th.rows(); ++k)
    scheme.blocks[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(th.cols()));

  for (Eigen::Index l = 0; l < th.cols(); ++l) {
    Eigen::Index offset = 0;
    for (Eigen::Index k = 0; k < th.rows(); ++k) {
      long count = static_cast<long>(th(k, l));
      long size = static_cast<long>(n_src(k));
      auto& kl_blocks = scheme.blocks[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
      for (long m = 0; m < count; ++m) {
        std::vector<Eigen::Index> block(static_cast<std::size_t>(size));
        std::iota(block.begin(), block.end(), offset);
        offset += size;
        kl_blocks.push_back(std::move(block));
      }
    }
  }
  return scheme;
}

std::vector<std::vector<ElementaryTensorLabel>> seed_image(
    const PartitionScheme& scheme, const DimensionSystem& sys, std::size_t i,
    const std::vector<ElementaryTensorLabel>& inputs) {
  IntMatrix th = sys.theta(i);
  IntVector n_src = sys.n(i);
  IntVector n_dst = sys.n(i + 1);
  if (static_cast<Eigen::Index>(inputs.size()) != th.rows())
    throw shape_error("seed_image needs one input label per source summand");
  for (Eigen::Index k = 0; k < th.rows(); ++k)
    if (static_cast<Eigen::Index>(inputs[static_cast<std::size_t>(k)].word.size()) !=
        static_cast<Eigen::Index>(static_cast<long>(n_src(k))))
      throw shape_error("input word length mismatch at summand " + std::to_string(k + 1));

  std::vector<std::vector<ElementaryTensorLabel>> out(static_cast<std::size_t>(th.cols()));
  for (Eigen::Index l = 0; l < th.cols(); ++l) {
    for (Eigen::Index k = 0; k < th.rows(); ++k) {
      const auto& kl_blocks = scheme.blocks[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
      for (const auto& block : kl_blocks) {
        ElementaryTensorLabel label;
        label.summand = l;
        label.word.assign(static_cast<std::size_t>(static_cast<long>(n_dst(l))),
                          Symbol::unit_symbol());
        for (std::size_t t = 0; t < block.size(); ++t)
          label.word[static_cast<std::size_t>(block[t])] =
              inputs[static_cast<std::size_t>(k)].word[t];
        out[static_cast<std::size_t>(l)].push_back(std::move(label));
      }
    }
  }
  return out;
}

LevelPermutationFamily intertwiner(const PartitionScheme& scheme_p, const PartitionScheme& scheme_q,
                                   const LevelPermutationFamily& sigma, const DimensionSystem& sys,
                                   std::size_t i) {
  IntMatrix th = sys.theta(i);
  IntVector n_dst = sys.n(i + 1);
  LevelPermutationFamily gamma;
  gamma.perms.resize(static_cast<std::size_t>(th.cols()));
  for (Eigen::Index l = 0; l < th.cols(); ++l)
    gamma.perms[static_cast<std::size_t>(l)].assign(
        static_cast<std::size_t>(static_cast<long>(n_dst(l))), -1);

  for (Eigen::Index k = 0; k < th.rows(); ++k) {
    if (scheme_p.blocks[static_cast<std::size_t>(k)].size() !=
        scheme_q.blocks[static_cast<std::size_t>(k)].size())
      throw shape_error("schemes disagree on target summands");
    for (Eigen::Index l = 0; l < th.cols(); ++l) {
      const auto& p_blocks = scheme_p.blocks[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
      const auto& q_blocks = scheme_q.blocks[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
      if (p_blocks.size() != q_blocks.size())
        throw shape_error("schemes disagree on block counts at (" + std::to_string(k + 1) + "," +
                          std::to_string(l + 1) + ")");
      for (std::size_t m = 0; m < p_blocks.size(); ++m) {
        for (std::size_t t = 0; t < q_blocks[m].size(); ++t) {
          Eigen::Index image =
              p_blocks[m][static_cast<std::size_t>(sigma.perms[static_cast<std::size_t>(k)][t])];
          gamma.perms[static_cast<std::size_t>(l)][static_cast<std::size_t>(q_blocks[m][t])] = image;
        }
      }
    }
  }
  // Valid schemes cover every position, so gamma is total; guard anyway.
  for (const auto& perm : gamma.perms)
    for (Eigen::Index v : perm)
      if (v < 0) throw shape_error("schemes do not cover the target index set");
  return gamma;
}

namespace {

ElementaryTensorLabel permute_label(const ElementaryTensorLabel& label,
                                    const std::vector<Eigen::Index>& perm) {
  ElementaryTensorLabel out;
  out.summand = label.summand;
  out.word.resize(label.word.size());
  for (std::size_t t = 0; t < label.word.size(); ++t)
    out.word[t] = label.word[static_cast<std::size_t>(perm[t])];
  return out;
}

}  // namespace

bool verify_commutation(const PartitionScheme& scheme_p, const PartitionScheme& scheme_q,
                        const LevelPermutationFamily& sigma, const LevelPermutationFamily& gamma,
                        const DimensionSystem& sys, std::size_t i,
                        const std::vector<std::vector<ElementaryTensorLabel>>& samples) {
  for (const auto& sample : samples) {
    // sigma then Q-seed
    std::vector<ElementaryTensorLabel> permuted;
    permuted.reserve(sample.size());
    for (std::size_t k = 0; k < sample.size(); ++k)
      permuted.push_back(permute_label(sample[k], sigma.perms[k]));
    auto route_q = seed_image(scheme_q, sys, i, permuted);

    // P-seed then gamma
    auto route_p = seed_image(scheme_p, sys, i, sample);
    for (std::size_t l = 0; l < route_p.size(); ++l)
      for (auto& label : route_p[l]) label = permute_label(label, gamma.perms[l]);

    if (route_p != route_q) return false;
  }
  return true;
}

std::vector<std::vector<ElementaryTensorLabel>> single_generator_samples(const DimensionSystem& sys,
                                                                         std::size_t i) {
  std::vector<std::vector<ElementaryTensorLabel>> samples;
  IntVector n = sys.n(i);
  for (Eigen::Index k = 0; k < n.size(); ++k) {
    for (long t = 0; t < static_cast<long>(n(k)); ++t) {
      std::vector<ElementaryTensorLabel> sample;
      for (Eigen::Index kk = 0; kk < n.size(); ++kk) sample.push_back(unit_label(sys, i, kk));
      sample[static_cast<std::size_t>(k)].word[static_cast<std::size_t>(t)] =
          Symbol::generator(k, static_cast<Eigen::Index>(t));
      samples.push_back(std::move(sample));
    }
  }
  return samples;
}

namespace gen {

PartitionScheme random_partition(Rng& rng, const DimensionSystem& sys, std::size_t i) {
  PartitionScheme scheme = canonical_partition(sys, i);
  IntMatrix th = sys.theta(i);
  IntVector n_dst = sys.n(i + 1);
  for (Eigen::Index l = 0; l < th.cols(); ++l) {
    std::vector<Eigen::Index> pool(static_cast<std::size_t>(static_cast<long>(n_dst(l))));
    std::iota(pool.begin(), pool.end(), 0);
    rng.shuffle(pool);
    std::size_t next = 0;
    for (Eigen::Index k = 0; k < th.rows(); ++k)
      for (auto& block : scheme.blocks[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)])
        for (auto& position : block) position = pool[next++];
  }
  return scheme;
}

LevelPermutationFamily random_permutations(Rng& rng, const DimensionSystem& sys, std::size_t i) {
  LevelPermutationFamily family = identity_permutations(sys, i);
  for (auto& perm : family.perms) rng.shuffle(perm);
  return family;
}

}  // namespace gen

}  // namespace vill
