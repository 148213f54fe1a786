#include "doctest.h"
#include "properties.hpp"
#include "support.hpp"

using namespace ig;

TEST_SUITE("properties") {
  TEST_CASE("bank exclusivity on the fixture and random trains") {
    const auto ds = test::worked_example();
    CHECK(prop::bank_exclusive(mine(test::slice(ds, 0, 7), {}), test::slice(ds, 0, 7)).empty());
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      std::mt19937_64 rng(seed);
      const auto xs = test::random_instances(rng, 20 + seed, 3 + seed % 8, 2 + static_cast<Code>(seed % 3));
      const auto bank = mine(xs, {static_cast<IncludeInstances>(seed % 3), 1});
      const auto problem = prop::bank_exclusive(bank, xs);
      CHECK_MESSAGE(problem.empty(), problem);
    }
  }

  TEST_CASE("pairwise-only patterns are intersections of some pair") {
    std::mt19937_64 rng(44);
    const auto xs = test::random_instances(rng, 40, 6, 3);
    const auto bank = mine(xs, {});
    CHECK(prop::patterns_are_intersections(bank, xs));
  }

  TEST_CASE("score monotonicity under added patterns") {
    CHECK(prop::score_monotonicity(1000, 7).empty());
  }

  TEST_CASE("frequency scaling preserves every comparison") {
    CHECK(prop::freq_scaling(1000, 8).empty());
  }

  TEST_CASE("larger r never adds R3 verdicts") {
    CHECK(prop::r_monotonicity(200, 9).empty());
  }

  TEST_CASE("normal verdicts satisfy both inequalities") {
    CHECK(prop::normal_verdicts_consistent(200, 10).empty());
  }
}
