#include <numeric>

#include "doctest.h"
#include "support.hpp"

using namespace ig;

namespace {

EncodedDataset sequence(std::size_t n, const std::vector<std::size_t>& removed = {}) {
  EncodedDataset ds;
  ds.original_count = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(removed.begin(), removed.end(), i) != removed.end()) {
      ds.removed.push_back(i);
      continue;
    }
    ds.instances.push_back({{static_cast<Code>(i)}, i % 3 == 0 ? Label::anomalous : Label::normal, i});
  }
  return ds;
}

}  // namespace

TEST_SUITE("split") {
  TEST_CASE("boundary rounds half up") {
    CHECK(split_boundary(12887, 50) == 6444);
    CHECK(split_boundary(10, 10) == 1);
    CHECK(split_boundary(5, 10) == 1);
    CHECK(split_boundary(4, 10) == 0);
  }

  TEST_CASE("train totals for the two contradiction-free benchmark subsets") {
    const std::vector<std::size_t> unsw{1417, 2835, 4252, 5670, 7087, 8504, 9922, 11339, 12757};
    const std::vector<std::size_t> ukm{1289, 2577, 3866, 5155, 6444, 7732, 9021, 10310, 11598};
    for (int i = 0; i < 9; ++i) {
      CHECK(split_boundary(14174, 10 * (i + 1)) == unsw[static_cast<std::size_t>(i)]);
      CHECK(split_boundary(12887, 10 * (i + 1)) == ukm[static_cast<std::size_t>(i)]);
    }
  }

  TEST_CASE("smallest cut takes the first row") {
    const auto r = sequential_split(sequence(10), {10, SplitMode::positional});
    REQUIRE(r.train.size() == 1);
    CHECK(r.train[0].origin == 0);
    CHECK(r.test.size() == 9);
  }

  TEST_CASE("boundary is computed before contradiction removal") {
    const auto ds = sequence(20, {0, 1, 5, 15});
    const auto r = sequential_split(ds, {50, SplitMode::positional});
    CHECK(r.boundary == 10);
    CHECK(r.train.size() == 7);
    CHECK(r.test.size() == 9);
    for (const auto& x : r.train) CHECK(x.origin < 10);
    for (const auto& x : r.test) CHECK(x.origin >= 10);
  }

  TEST_CASE("degenerate splits are errors") {
    CHECK_THROWS_AS(sequential_split(sequence(4), {10, SplitMode::positional}), Error);
    CHECK_THROWS_AS(sequential_split(sequence(20, {10, 11, 12, 13, 14, 15, 16, 17, 18, 19}),
                                     {50, SplitMode::positional}),
                    Error);
    try {
      sequential_split(sequence(4), {10, SplitMode::positional});
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::degenerate_split);
      CHECK(std::string(e.what()).find("degenerate split") != std::string::npos);
    }
    CHECK_THROWS_AS(SplitSpec({0, SplitMode::positional}).validate(), Error);
    CHECK_THROWS_AS(SplitSpec({100, SplitMode::positional}).validate(), Error);
  }

  TEST_CASE("partition properties over every ratio") {
    const auto ds = sequence(137, {3, 50, 51, 99, 120});
    for (int r = 1; r <= 99; ++r) {
      const auto s = sequential_split(ds, {r, SplitMode::positional});
      CHECK(s.train.size() + s.test.size() == ds.instances.size());
      std::vector<std::size_t> origins;
      for (const auto& x : s.train) origins.push_back(x.origin);
      for (const auto& x : s.test) origins.push_back(x.origin);
      origins.insert(origins.end(), ds.removed.begin(), ds.removed.end());
      std::sort(origins.begin(), origins.end());
      std::vector<std::size_t> all(137);
      std::iota(all.begin(), all.end(), std::size_t{0});
      CHECK(origins == all);
      const auto b = split_boundary(137, r) + split_boundary(137, 100 - r);
      CHECK(b >= 137);
      CHECK(b <= 138);
    }
  }

  TEST_CASE("per-class mode cuts each class separately") {
    const auto ds = sequence(30);
    const auto s = sequential_split(ds, {50, SplitMode::per_class});
    const auto c = class_counts(s.train);
    CHECK(c.anomalous == 5);
    CHECK(c.normal == 10);
    CHECK(s.train.size() + s.test.size() == 30);
  }

  TEST_CASE("class_counts") {
    CHECK(class_counts({}) == ClassCounts{0, 0});
    std::mt19937_64 rng(4);
    const auto xs = test::random_instances(rng, 333, 2, 2, 0.3);
    std::size_t normal = 0;
    for (const auto& x : xs) normal += x.label == Label::normal;
    const auto c = class_counts(xs);
    CHECK(c.normal == normal);
    CHECK(c.anomalous == 333 - normal);
  }

  TEST_CASE("ratio lists") {
    CHECK(parse_ratios("10:90:10") == std::vector<int>{10, 20, 30, 40, 50, 60, 70, 80, 90});
    CHECK(parse_ratios("35") == std::vector<int>{35});
    CHECK_THROWS_AS(parse_ratios("10:x"), Error);
    CHECK_THROWS_AS(parse_ratios("0"), Error);
    CHECK(parse_split_mode("per-class") == SplitMode::per_class);
  }
}
