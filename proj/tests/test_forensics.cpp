#include "doctest.h"
#include "support.hpp"

using namespace ig;

namespace {

ColumnStats sigma_stats() {
  ColumnStats s;
  s.mode = BinningMode::sigma_bins;
  ColumnStats::Column duration;
  duration.name = "duration";
  duration.kind = StatsKind::numeric;
  ColumnStats::Column protocol;
  protocol.name = "protocol";
  protocol.kind = StatsKind::categorical;
  protocol.intern("udp");
  protocol.intern("tcp");
  s.columns = {duration, protocol};
  return s;
}

}  // namespace

TEST_SUITE("forensics") {
  TEST_CASE("top normal pattern of the worked example") {
    const auto ds = test::worked_example();
    const auto bank = mine(test::slice(ds, 0, 7), {});
    const auto top = top_patterns(bank, BankSide::cnp, 1, &ds.stats);
    REQUIRE(top.size() == 1);
    CHECK(test::names(top[0].pattern, ds.stats) == "abe");
    CHECK(top[0].support == 2);
    CHECK(top[0].rank == 1);
    CHECK(top[0].decoded == std::vector<std::string>{"a", "b", "e"});

    const auto all = top_patterns(bank, BankSide::cnp, 10);
    REQUIRE(all.size() == 3);
    CHECK(test::names(all[1].pattern, ds.stats) == "abde");  // longer wins the tie
    CHECK(top_patterns(PatternBank{}, BankSide::cap, 5).empty());
    CHECK_THROWS_AS(top_patterns(bank, BankSide::cap, 0), Error);
  }

  TEST_CASE("full ranking agrees with a comparison oracle") {
    std::mt19937_64 rng(31);
    PatternBank bank;
    bank.cap = test::random_patterns(rng, 300, 9, 3);
    std::sort(bank.cap.begin(), bank.cap.end(), token_order);
    bank.cap.erase(std::unique(bank.cap.begin(), bank.cap.end(),
                               [](const Pattern& a, const Pattern& b) { return a.tokens == b.tokens; }),
                   bank.cap.end());
    const auto ranked = top_patterns(bank, BankSide::cap, bank.cap.size());
    REQUIRE(ranked.size() == bank.cap.size());
    for (std::size_t i = 1; i < ranked.size(); ++i) {
      const auto& a = ranked[i - 1].pattern;
      const auto& b = ranked[i].pattern;
      const bool ordered = a.freq > b.freq || (a.freq == b.freq && a.size() > b.size()) ||
                           (a.freq == b.freq && a.size() == b.size() && a.tokens < b.tokens);
      CHECK(ordered);
      CHECK(ranked[i].rank == i + 1);
    }
    const auto head = top_patterns(bank, BankSide::cap, 7);
    for (std::size_t i = 0; i < head.size(); ++i) CHECK(head[i].pattern == ranked[i].pattern);
  }

  TEST_CASE("token rendering") {
    const auto s = sigma_stats();
    CHECK(decode_token({0, 3}, s) == "duration: z∈[−0.5,0.5)σ");
    CHECK(decode_token({0, 4}, s) == "duration: z∈[0.5,1.5)σ");
    CHECK(decode_token({0, 6}, s) == "duration: z≥2.5σ");
    CHECK(decode_token({0, 0}, s) == "duration: z<−2.5σ");
    CHECK(decode_token({0, kSigmaMissingCode}, s) == "duration = NotNumber");
    CHECK(decode_token({1, 1}, s) == "protocol = tcp");
    CHECK_THROWS_AS(decode_token({2, 0}, s), Error);
    CHECK_THROWS_AS(decode_token({1, 2}, s), Error);
    try {
      decode_token({1, 9}, s);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::unknown_token);
      CHECK(std::string(e.what()).find("1|9") != std::string::npos);
    }
  }

  TEST_CASE("diff buckets") {
    const Pattern a{{{0, 1}, {2, 3}, {4, 0}}, 1};
    const auto same = diff_patterns(a, a);
    CHECK(same.green == std::vector<std::uint32_t>{0, 2, 4});
    CHECK(same.red.empty());
    CHECK(same.blue.empty());

    const Pattern b{{{1, 1}, {3, 3}}, 1};
    const auto disjoint = diff_patterns(a, b);
    CHECK(disjoint.blue == std::vector<std::uint32_t>{0, 1, 2, 3, 4});

    std::mt19937_64 rng(2);
    const auto ps = test::random_patterns(rng, 60, 10, 3);
    for (std::size_t i = 0; i + 1 < ps.size(); i += 2) {
      const auto d = diff_patterns(ps[i], ps[i + 1]);
      PatternDiff expect;
      for (std::uint32_t c = 0; c < 10; ++c) {
        const Token* x = nullptr;
        const Token* y = nullptr;
        for (const auto& t : ps[i].tokens) if (t.column == c) x = &t;
        for (const auto& t : ps[i + 1].tokens) if (t.column == c) y = &t;
        if (x && y) (x->code == y->code ? expect.green : expect.red).push_back(c);
        else if (x || y) expect.blue.push_back(c);
      }
      CHECK(d == expect);
    }
  }

  TEST_CASE("contrast picks the most similar opposite pattern") {
    const auto ds = test::worked_example();
    const auto bank = mine(test::slice(ds, 0, 7), {});
    const auto cap = top_patterns(bank, BankSide::cap, 10, &ds.stats);
    const auto cnp = top_patterns(bank, BankSide::cnp, 10, &ds.stats);
    const auto contrasts = contrast_paths(cap, cnp);
    REQUIRE(contrasts.size() == cap.size());
    for (const auto& c : contrasts) {
      const auto best = diff_patterns(cap[c.path_rank - 1].pattern, cnp[c.contrast_rank - 1].pattern).green.size();
      for (const auto& other : cnp) CHECK(diff_patterns(cap[c.path_rank - 1].pattern, other.pattern).green.size() <= best);
    }
    CHECK(contrast_paths(cap, {}).empty());
  }

  TEST_CASE("renderings") {
    const auto ds = test::worked_example();
    const auto bank = mine(test::slice(ds, 0, 7), {});
    const auto cap = top_patterns(bank, BankSide::cap, 10, &ds.stats);
    const auto cnp = top_patterns(bank, BankSide::cnp, 10, &ds.stats);
    const auto text = forensics_to_text(BankSide::cap, cap, cnp, &ds.stats);
    CHECK(text.find("green") != std::string::npos);
    const auto j = forensics_to_json(BankSide::cap, cap, cnp, &ds.stats);
    CHECK(j["entries"].size() == 2);
    CHECK(j["contrast_side"] == "cnp");
    const auto dot = forensics_to_dot(BankSide::cap, cap, &ds.stats);
    CHECK(dot.rfind("graph cap_paths {", 0) == 0);
    CHECK(dot.find("p1 -- p2") != std::string::npos);
    CHECK(forensics_to_text(BankSide::cap, cap, cnp, &ds.stats) == text);
  }
}
