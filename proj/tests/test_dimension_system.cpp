#include "vill/dimension_system.hpp"

#include "vill/errors.hpp"
#include "vill/generators.hpp"

#include <doctest.h>

using namespace vill;

namespace {

DimensionSystem two_summand_pair() {
  // n = (1,1) -> (2,2) via theta = [[1,1],[1,1]]
  std::vector<LevelSpec> levels(2);
  levels[0].n = IntVector::Constant(2, 1);
  levels[0].theta = IntMatrix::Constant(2, 2, 1);
  levels[1].n = IntVector::Constant(2, 2);
  return DimensionSystem(std::move(levels));
}

}  // namespace

TEST_SUITE("dimension_system") {

TEST_CASE("valid single chain 1,2,4") {
  auto sys = single_summand_chain({2, 2});
  auto report = validate(sys);
  CHECK(report.ok());
  CHECK(report.infinite_dimensional_heuristic);
  CHECK(sys.n(0)(0) == 1);
  CHECK(sys.n(1)(0) == 2);
  CHECK(sys.n(2)(0) == 4);
}

TEST_CASE("two-summand all-ones step is valid") {
  auto report = validate(two_summand_pair());
  CHECK(report.ok());
}

TEST_CASE("unitality violation reported with coordinates") {
  std::vector<LevelSpec> levels(2);
  levels[0].n = IntVector::Constant(1, 1);
  levels[0].theta = IntMatrix::Constant(1, 1, 2);
  levels[1].n = IntVector::Constant(1, 3);  // 2*1 != 3
  auto report = validate(DimensionSystem(std::move(levels)));
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations[0].code == "unitality");
  CHECK(report.violations[0].level == 0);
  CHECK(report.violations[0].l == 0);
}

TEST_CASE("zero rows and zero columns are rejected") {
  std::vector<LevelSpec> levels(2);
  levels[0].n = IntVector::Constant(2, 1);
  levels[0].theta = IntMatrix::Zero(2, 2);
  levels[0].theta(0, 0) = 2;
  levels[0].theta(1, 0) = 1;  // column 2 receives nothing, row handled
  levels[1].n = IntVector::Zero(2);
  levels[1].n(0) = 3;
  levels[1].n(1) = 1;
  auto report = validate(DimensionSystem(std::move(levels)));
  bool saw_zero_column = false;
  for (const auto& v : report.violations) saw_zero_column = saw_zero_column || v.code == "zero_column";
  CHECK(saw_zero_column);
}

TEST_CASE("compose with t=1 returns theta itself") {
  auto sys = single_summand_chain({3, 5});
  CHECK(composed_multiplicity(sys, 0, 1)(0, 0) == 3);
  CHECK(composed_multiplicity(sys, 1, 1)(0, 0) == 5);
}

TEST_CASE("composition of the frozen 2x2 example") {
  // theta1 = [[1,1],[1,1]], theta2 = [[2,1],[1,2]] -> composed [[3,3],[3,3]]
  std::vector<LevelSpec> levels(3);
  levels[0].n = IntVector::Constant(2, 1);
  levels[0].theta = IntMatrix::Constant(2, 2, 1);
  levels[1].n = IntVector::Constant(2, 2);
  levels[1].theta.resize(2, 2);
  levels[1].theta << 2, 1, 1, 2;
  levels[2].n = IntVector::Constant(2, 6);
  DimensionSystem sys(std::move(levels));
  REQUIRE(validate(sys).ok());
  IntMatrix c = composed_multiplicity(sys, 0, 2);
  for (Eigen::Index k = 0; k < 2; ++k)
    for (Eigen::Index l = 0; l < 2; ++l) CHECK(c(k, l) == 3);

  RatMatrix p = trace_pullback_matrix(sys, 0, 2);
  for (Eigen::Index k = 0; k < 2; ++k)
    for (Eigen::Index l = 0; l < 2; ++l) CHECK(p(k, l) == Rational(1, 2));
  CHECK(is_column_stochastic(p));
}

TEST_CASE("identity thetas compose to the identity") {
  std::vector<LevelSpec> levels(3);
  for (int i = 0; i < 3; ++i) levels[i].n = IntVector::Constant(2, 1);
  levels[0].theta = IntMatrix::Identity(2, 2);
  levels[1].theta = IntMatrix::Identity(2, 2);
  DimensionSystem sys(std::move(levels));
  CHECK(composed_multiplicity(sys, 0, 2) == IntMatrix::Identity(2, 2));
}

TEST_CASE("single-summand pullback matrix is [1]") {
  auto sys = single_summand_chain({2, 4});
  RatMatrix p = trace_pullback_matrix(sys, 0, 2);
  REQUIRE(p.rows() == 1);
  CHECK(p(0, 0) == 1);
}

TEST_CASE("order-unit identity holds for random systems over all spans") {
  gen::Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto sys = gen::random_system(rng, 5, 3, 4, 3);
    REQUIRE(validate(sys).ok());
    std::size_t depth = sys.explicit_levels();
    for (std::size_t i = 0; i + 1 < depth; ++i)
      for (std::size_t t = 1; i + t < depth; ++t) {
        IntMatrix th = composed_multiplicity(sys, i, t);
        IntVector lhs = (th.transpose() * sys.n(i)).eval();
        CHECK(lhs == sys.n(i + t));
      }
  }
}

TEST_CASE("compose is functorial against the direct-product oracle") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto sys = gen::random_system(rng, 5, 3, 4, 3);
    std::size_t depth = sys.explicit_levels();
    for (std::size_t i = 0; i + 2 < depth; ++i)
      for (std::size_t t = 1; i + t + 1 < depth; ++t)
        for (std::size_t s = 1; i + t + s < depth; ++s) {
          IntMatrix whole = composed_multiplicity(sys, i, t + s);
          IntMatrix split = composed_multiplicity(sys, i, t) * composed_multiplicity(sys, i + t, s);
          CHECK(whole == split);
          RatMatrix pw = trace_pullback_matrix(sys, i, t + s);
          RatMatrix ps = trace_pullback_matrix(sys, i, t) * trace_pullback_matrix(sys, i + t, s);
          CHECK(pw == ps);
        }
  }
}

TEST_CASE("simplicity: all-positive theta gives t=1 witnesses") {
  auto sys = two_summand_pair();
  auto report = simplicity_verdict(sys, 2);
  CHECK(report.verdict == SimplicityVerdict::Simple);
  CHECK(report.truncation_only);
  REQUIRE(report.witnesses.size() == 1);
  CHECK(report.witnesses[0][0] == 1);
  CHECK(report.witnesses[0][1] == 1);
}

TEST_CASE("simplicity: periodic identity is NotSimplePeriodic") {
  std::vector<LevelSpec> levels(1);
  levels[0].n = IntVector::Constant(2, 1);
  TailRule tail;
  tail.steps.push_back({IntMatrix::Identity(2, 2), IntMatrix()});
  DimensionSystem sys(std::move(levels), tail);
  CHECK(simplicity_verdict(sys, 4).verdict == SimplicityVerdict::NotSimplePeriodic);
  CHECK(unique_trace_diagnostic(sys, 4, Rational(1, 100)).verdict ==
        UniqueTraceVerdict::NotContractivePeriodic);
}

TEST_CASE("simplicity: Fibonacci-style period is SimplePeriodic") {
  // Oracle: [[1,1],[1,0]]^2 = [[2,1],[1,1]] is strictly positive.
  std::vector<LevelSpec> levels(1);
  levels[0].n = IntVector::Constant(2, 1);
  TailRule tail;
  IntMatrix th(2, 2);
  th << 1, 1, 1, 0;
  tail.steps.push_back({th, IntMatrix()});
  DimensionSystem sys(std::move(levels), tail);
  CHECK(simplicity_verdict(sys, 4).verdict == SimplicityVerdict::SimplePeriodic);
}

TEST_CASE("unique trace: single chain has diameter 0 at every span") {
  auto sys = single_summand_chain({2, 2, 2});
  auto report = unique_trace_diagnostic(sys, 4, Rational(1, 10));
  REQUIRE(report.diameters.size() == 3);
  for (const auto& d : report.diameters) CHECK(d == 0);
  CHECK(report.verdict == UniqueTraceVerdict::UniqueTraceLikely);
}

TEST_CASE("unique trace: all-equal stochastic entries collapse immediately") {
  std::vector<LevelSpec> levels(3);
  levels[0].n = IntVector::Constant(2, 1);
  levels[0].theta = IntMatrix::Constant(2, 2, 1);
  levels[1].n = IntVector::Constant(2, 2);
  levels[1].theta = IntMatrix::Constant(2, 2, 1);
  levels[2].n = IntVector::Constant(2, 4);
  DimensionSystem sys(std::move(levels));
  auto report = unique_trace_diagnostic(sys, 3, Rational(1, 1000));
  REQUIRE(report.diameters.size() == 2);
  CHECK(report.diameters[0] == 0);
  CHECK(report.diameters[1] == 0);
}

TEST_CASE("unique trace: [[2,1],[1,2]] period contracts strictly") {
  // Oracle: diameters 2/3, 2/9, 2/27 from explicit column differences.
  std::vector<LevelSpec> levels(1);
  levels[0].n = IntVector::Constant(2, 1);
  TailRule tail;
  IntMatrix th(2, 2);
  th << 2, 1, 1, 2;
  tail.steps.push_back({th, IntMatrix()});
  DimensionSystem sys(std::move(levels), tail);
  auto report = unique_trace_diagnostic(sys, 4, Rational(1, 10));
  REQUIRE(report.diameters.size() == 3);
  CHECK(report.diameters[0] == Rational(2, 3));
  CHECK(report.diameters[1] == Rational(2, 9));
  CHECK(report.diameters[2] == Rational(2, 27));
  CHECK(report.verdict == UniqueTraceVerdict::UniqueTracePeriodic);
}

TEST_CASE("tail rule generates levels and thetas periodically") {
  std::vector<LevelSpec> levels(1);
  levels[0].n = IntVector::Constant(1, 1);
  TailRule tail;
  tail.steps.push_back({IntMatrix::Constant(1, 1, 2), IntMatrix()});
  tail.steps.push_back({IntMatrix::Constant(1, 1, 3), IntMatrix()});
  DimensionSystem sys(std::move(levels), tail);
  CHECK(sys.n(1)(0) == 2);
  CHECK(sys.n(2)(0) == 6);
  CHECK(sys.n(3)(0) == 12);
  CHECK(sys.n(4)(0) == 36);
  CHECK(composed_multiplicity(sys, 0, 4)(0, 0) == 36);
}

TEST_CASE("out-of-range level without tail rule throws") {
  auto sys = single_summand_chain({2});
  CHECK_THROWS_AS((void)composed_multiplicity(sys, 0, 2), Error);
}

}  // TEST_SUITE
