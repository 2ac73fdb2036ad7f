#include "vill/partition.hpp"

#include "vill/errors.hpp"
#include "vill/generators.hpp"

#include <doctest.h>

using namespace vill;

namespace {

DimensionSystem intro_doubling() {
  // j=1, n=(1) -> (2) with theta = [2]
  return single_summand_chain({2});
}

}  // namespace

TEST_SUITE("partition_scheme") {

TEST_CASE("canonical blocks are consecutive runs {1,2},{3,4}") {
  auto sys = single_summand_chain({2}, Int(2));  // n = (2) -> (4), theta = 2
  auto scheme = canonical_partition(sys, 0);
  REQUIRE(scheme.blocks.size() == 1);
  REQUIRE(scheme.blocks[0][0].size() == 2);
  CHECK(scheme.blocks[0][0][0] == std::vector<Eigen::Index>{0, 1});
  CHECK(scheme.blocks[0][0][1] == std::vector<Eigen::Index>{2, 3});
  CHECK(validate_partition(scheme, sys, 0).ok());
}

TEST_CASE("canonical blocks for j=2 unit column") {
  std::vector<LevelSpec> levels(2);
  levels[0].n = IntVector::Constant(2, 1);
  levels[0].theta = IntMatrix::Constant(2, 1, 1);  // two summands -> one target
  levels[1].n = IntVector::Constant(1, 2);
  DimensionSystem sys(std::move(levels));
  auto scheme = canonical_partition(sys, 0);
  CHECK(scheme.blocks[0][0][0] == std::vector<Eigen::Index>{0});
  CHECK(scheme.blocks[1][0][0] == std::vector<Eigen::Index>{1});
}

TEST_CASE("validator flags shared positions and short blocks") {
  auto sys = single_summand_chain({2}, Int(2));
  auto scheme = canonical_partition(sys, 0);
  SUBCASE("disjointness") {
    scheme.blocks[0][0][1][0] = 1;  // 1 now covered twice, 2 uncovered
    auto report = validate_partition(scheme, sys, 0);
    bool disjointness = false, coverage = false;
    for (const auto& v : report.violations) {
      disjointness = disjointness || v.code == "disjointness";
      coverage = coverage || v.code == "coverage";
    }
    CHECK(disjointness);
    CHECK(coverage);
  }
  SUBCASE("cardinality") {
    scheme.blocks[0][0][1].pop_back();
    auto report = validate_partition(scheme, sys, 0);
    bool cardinality = false;
    for (const auto& v : report.violations) cardinality = cardinality || v.code == "cardinality";
    CHECK(cardinality);
  }
}

TEST_CASE("intro seed: c maps to diag(c x 1, 1 x c)") {
  auto sys = intro_doubling();
  auto scheme = canonical_partition(sys, 0);
  std::vector<ElementaryTensorLabel> inputs{generator_label(sys, 0, 0)};
  auto image = seed_image(scheme, sys, 0, inputs);
  REQUIRE(image.size() == 1);
  REQUIRE(image[0].size() == 2);
  // first diagonal block: generator then unit; second: unit then generator
  CHECK(image[0][0].word[0] == Symbol::generator(0, 0));
  CHECK(image[0][0].word[1] == Symbol::unit_symbol());
  CHECK(image[0][1].word[0] == Symbol::unit_symbol());
  CHECK(image[0][1].word[1] == Symbol::generator(0, 0));
}

TEST_CASE("all-unit input maps to all-unit outputs") {
  auto sys = single_summand_chain({3}, Int(2));
  auto scheme = canonical_partition(sys, 0);
  std::vector<ElementaryTensorLabel> inputs{unit_label(sys, 0, 0)};
  auto image = seed_image(scheme, sys, 0, inputs);
  for (const auto& label : image[0])
    for (const auto& s : label.word) CHECK(s == Symbol::unit_symbol());
}

TEST_CASE("seed_image preserves generator multiplicity") {
  gen::Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    auto sys = gen::random_system(rng, 2, 3, 4, 3);
    auto scheme = gen::random_partition(rng, sys, 0);
    REQUIRE(validate_partition(scheme, sys, 0).ok());
    std::vector<ElementaryTensorLabel> inputs;
    for (Eigen::Index k = 0; k < sys.j(0); ++k) inputs.push_back(generator_label(sys, 0, k));
    auto image = seed_image(scheme, sys, 0, inputs);
    IntMatrix th = sys.theta(0);
    for (Eigen::Index l = 0; l < th.cols(); ++l) {
      for (Eigen::Index k = 0; k < th.rows(); ++k)
        for (long t = 0; t < static_cast<long>(sys.n(0)(k)); ++t) {
          long count = 0;
          for (const auto& label : image[static_cast<std::size_t>(l)])
            for (const auto& s : label.word)
              if (s == Symbol::generator(k, static_cast<Eigen::Index>(t))) ++count;
          CHECK(count == static_cast<long>(th(k, l)));
        }
    }
  }
}

TEST_CASE("intertwiner of equal schemes under identity is the identity") {
  auto sys = single_summand_chain({2}, Int(2));
  auto scheme = canonical_partition(sys, 0);
  auto sigma = identity_permutations(sys, 0);
  auto gamma = intertwiner(scheme, scheme, sigma, sys, 0);
  for (std::size_t t = 0; t < gamma.perms[0].size(); ++t)
    CHECK(gamma.perms[0][t] == static_cast<Eigen::Index>(t));
}

TEST_CASE("frozen transposition example") {
  // j=1, n=(1), theta=[2]; P-blocks {1},{2}, Q-blocks {2},{1} -> gamma swaps 1,2
  auto sys = intro_doubling();
  auto p = canonical_partition(sys, 0);
  auto q = canonical_partition(sys, 0);
  std::swap(q.blocks[0][0][0], q.blocks[0][0][1]);
  auto sigma = identity_permutations(sys, 0);
  auto gamma = intertwiner(p, q, sigma, sys, 0);
  CHECK(gamma.perms[0][0] == 1);
  CHECK(gamma.perms[0][1] == 0);
  CHECK(verify_commutation(p, q, sigma, gamma, sys, 0, single_generator_samples(sys, 0)));
}

TEST_CASE("identity gamma fails commutation when P != Q") {
  auto sys = intro_doubling();
  auto p = canonical_partition(sys, 0);
  auto q = canonical_partition(sys, 0);
  std::swap(q.blocks[0][0][0], q.blocks[0][0][1]);
  auto sigma = identity_permutations(sys, 0);
  auto gamma = identity_permutations(sys, 1);
  CHECK_FALSE(verify_commutation(p, q, sigma, gamma, sys, 0, single_generator_samples(sys, 0)));
}

TEST_CASE("unit-only samples always commute") {
  auto sys = single_summand_chain({2}, Int(2));
  gen::Rng rng(5);
  auto p = gen::random_partition(rng, sys, 0);
  auto q = gen::random_partition(rng, sys, 0);
  auto sigma = gen::random_permutations(rng, sys, 0);
  auto gamma = intertwiner(p, q, sigma, sys, 0);
  std::vector<std::vector<ElementaryTensorLabel>> units{{unit_label(sys, 0, 0)}};
  CHECK(verify_commutation(p, q, sigma, gamma, sys, 0, units));
}

TEST_CASE("random triples commute on single-generator and full samples") {
  gen::Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    auto sys = gen::random_system(rng, 2, 3, 4, 3);
    auto p = gen::random_partition(rng, sys, 0);
    auto q = gen::random_partition(rng, sys, 0);
    REQUIRE(validate_partition(p, sys, 0).ok());
    REQUIRE(validate_partition(q, sys, 0).ok());
    auto sigma = gen::random_permutations(rng, sys, 0);
    auto gamma = intertwiner(p, q, sigma, sys, 0);
    // gamma is a bijection
    for (const auto& perm : gamma.perms) {
      std::vector<bool> seen(perm.size(), false);
      for (Eigen::Index v : perm) {
        REQUIRE(v >= 0);
        REQUIRE(v < static_cast<Eigen::Index>(perm.size()));
        REQUIRE_FALSE(seen[static_cast<std::size_t>(v)]);
        seen[static_cast<std::size_t>(v)] = true;
      }
    }
    auto samples = single_generator_samples(sys, 0);
    std::vector<ElementaryTensorLabel> full;
    for (Eigen::Index k = 0; k < sys.j(0); ++k) full.push_back(generator_label(sys, 0, k));
    samples.push_back(full);
    CHECK(verify_commutation(p, q, sigma, gamma, sys, 0, samples));
  }
}

TEST_CASE("canonical partition always validates on random systems") {
  gen::Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    auto sys = gen::random_system(rng, 4, 3, 4, 3);
    for (std::size_t i = 0; i + 1 < sys.explicit_levels(); ++i)
      CHECK(validate_partition(canonical_partition(sys, i), sys, i).ok());
  }
}

}  // TEST_SUITE
