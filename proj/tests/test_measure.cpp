#include "vill/measure.hpp"

#include "vill/errors.hpp"
#include "vill/generators.hpp"

#include <doctest.h>

using namespace vill;

namespace {

Measure random_dense(gen::Rng& rng, int alphabet, Eigen::Index length, int max_atoms) {
  std::map<Word, Rational> atoms;
  int want = static_cast<int>(rng.between(1, max_atoms));
  std::vector<Int> raw;
  std::vector<Word> words;
  for (int a = 0; a < want; ++a) {
    Word w(static_cast<std::size_t>(length));
    for (auto& x : w) x = static_cast<Letter>(rng.below(static_cast<std::uint64_t>(alphabet)));
    words.push_back(std::move(w));
    raw.push_back(Int(rng.between(1, 9)));
  }
  Int total = 0;
  for (const auto& x : raw) total += x;
  for (std::size_t a = 0; a < words.size(); ++a) atoms[words[a]] += Rational(raw[a], total);
  return Measure::dense(alphabet, length, std::move(atoms));
}

}  // namespace

TEST_SUITE("measure") {

TEST_CASE("dense construction validates mass and shapes") {
  std::map<Word, Rational> atoms{{{0}, Rational(1, 2)}, {{1}, Rational(1, 2)}};
  Measure m = Measure::dense(2, 1, atoms);
  CHECK(m.kind() == Measure::Kind::Dense);
  CHECK(m.point_mass({0}) == Rational(1, 2));

  atoms[{1}] = Rational(1, 3);
  CHECK_THROWS_AS(Measure::dense(2, 1, atoms), Error);
  CHECK_THROWS_AS(Measure::dense(2, 1, {{{2}, Rational(1)}}), Error);
}

TEST_CASE("single full-mass atom normalizes to a point mass") {
  Measure m = Measure::dense(3, 2, {{{1, 2}, Rational(1)}});
  CHECK(m.is_point_mass());
  CHECK(m.point_mass_atom() == Word{1, 2});
}

TEST_CASE("dirac marginal is the subword") {
  Measure m = Measure::dirac(3, {0, 1, 0});
  Measure sub = marginal_block(m, {1, 2});
  CHECK(sub.is_point_mass());
  CHECK(sub.point_mass_atom() == Word{1, 0});
}

TEST_CASE("product marginal along a block is the block's factors") {
  gen::Rng rng(9);
  Measure f1 = random_dense(rng, 2, 2, 3);
  Measure f2 = random_dense(rng, 2, 3, 4);
  Measure p = Measure::product({f1, f2});
  CHECK(measure_equal(marginal_block(p, {0, 1}), f1));
  CHECK(measure_equal(marginal_block(p, {2, 3, 4}), f2));
}

TEST_CASE("uniform marginal onto one coordinate") {
  Measure u = Measure::uniform(2, 2);
  Measure one = marginal_block(u, {0});
  auto atoms = enumerate_atoms(one);
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[{0}] == Rational(1, 2));
  CHECK(atoms[{1}] == Rational(1, 2));
}

TEST_CASE("densifying a product then marginalizing equals marginalizing factors") {
  gen::Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    Eigen::Index len1 = rng.between(1, 4), len2 = rng.between(1, 4);
    Measure f1 = random_dense(rng, 2, len1, 4);
    Measure f2 = random_dense(rng, 2, len2, 4);
    Measure p = Measure::product({f1, f2});
    Measure dense = Measure::dense(2, p.length(), enumerate_atoms(p));

    std::vector<Eigen::Index> coords;
    for (Eigen::Index c = 0; c < p.length(); ++c)
      if (rng.below(2) == 0) coords.push_back(c);
    if (coords.empty()) coords.push_back(0);
    CHECK(measure_equal(marginal_block(p, coords), marginal_block(dense, coords)));
  }
}

TEST_CASE("measure_equal distinguishes product order of distinct point masses") {
  Measure a = Measure::product({Measure::dirac(2, {0}), Measure::dirac(2, {1})});
  Measure b = Measure::product({Measure::dirac(2, {1}), Measure::dirac(2, {0})});
  CHECK(measure_equal(a, Measure::dirac(2, {0, 1})));
  CHECK_FALSE(measure_equal(a, b));
}

TEST_CASE("huge point masses compare without densifying") {
  std::vector<Measure> fa, fb;
  for (int i = 0; i < 200; ++i) {
    fa.push_back(Measure::dirac(2, {static_cast<Letter>(i % 2), 1}));
    fb.push_back(Measure::dirac(2, {static_cast<Letter>(i % 2), 1}));
  }
  Measure a = Measure::product(std::move(fa));
  Measure b = Measure::product(std::move(fb));
  CHECK(a.length() == 400);
  CHECK(measure_equal(a, b));
}

TEST_CASE("huge non-point products compare along shared boundaries") {
  std::vector<Measure> fa, fb;
  for (int i = 0; i < 40; ++i) {
    std::map<Word, Rational> atoms{{{0, 0}, Rational(1, 3)}, {{1, 1}, Rational(2, 3)}};
    fa.push_back(Measure::dense(2, 2, atoms));
    fb.push_back(Measure::dense(2, 2, std::move(atoms)));
  }
  Measure a = Measure::product(std::move(fa));
  Measure b = Measure::product(std::move(fb));
  CHECK(measure_equal(a, b));

  // Perturb one factor: detected exactly.
  std::vector<Measure> fc;
  for (int i = 0; i < 40; ++i) {
    Rational p = (i == 25) ? Rational(1, 2) : Rational(1, 3);
    std::map<Word, Rational> atoms{{{0, 0}, p}, {{1, 1}, Rational(1) - p}};
    fc.push_back(Measure::dense(2, 2, std::move(atoms)));
  }
  CHECK_FALSE(measure_equal(a, Measure::product(std::move(fc))));
}

TEST_CASE("enumerate_atoms refuses past the cap") {
  std::vector<Measure> factors(40, Measure::uniform(2, 1));
  Measure p = Measure::product(std::move(factors));
  CHECK(p.support_bound() > atom_cap());
  CHECK_THROWS_AS((void)enumerate_atoms(p), Error);
}

TEST_CASE("convex combination: degenerate weights pass measures through") {
  Measure a = Measure::dirac(2, {0});
  Measure b = Measure::dirac(2, {1});
  RatVector w(2);
  w << Rational(1), Rational(0);
  CHECK(measure_equal(convex_combination({a, b}, w), a));
}

TEST_CASE("convex combination of two point masses has two atoms") {
  Measure a = Measure::dirac(2, {0, 0});
  Measure b = Measure::dirac(2, {1, 0});
  RatVector w(2);
  w << Rational(1, 2), Rational(1, 2);
  auto atoms = enumerate_atoms(convex_combination({a, b}, w));
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[{0, 0}] == Rational(1, 2));
  CHECK(atoms[{1, 0}] == Rational(1, 2));
}

TEST_CASE("normalization survives marginals and combinations") {
  gen::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Measure m = random_dense(rng, 3, 4, 6);
    std::vector<Eigen::Index> coords{0, 2};
    auto atoms = enumerate_atoms(marginal_block(m, coords));
    Rational mass = 0;
    for (const auto& [w, p] : atoms) mass += p;
    CHECK(mass == 1);
  }
}

}  // TEST_SUITE
