#include "ig/scoring.hpp"

#include <charconv>
#include <cmath>
#include <unordered_map>

#include "ig/hash.hpp"
#include "ig/parallel.hpp"

namespace ig {

void ScoringConfig::validate() const {
  if (exponent != 1 && exponent != 2) {
    throw Error(ErrorKind::invalid_config,
                "exponent p=" + std::to_string(exponent) + " unsupported; expected 1 or 2", "p");
  }
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::invalid_config, "r must be a finite non-negative number", "r");
  }
}

std::string_view to_string(Regulation reg) {
  switch (reg) {
    case Regulation::none: return "none";
    case Regulation::r1: return "R1";
    case Regulation::r2: return "R2";
    case Regulation::r3: return "R3";
  }
  return "none";
}

bool is_subset(std::span<const Token> pattern, const EncodedInstance& t) {
  for (const auto& tok : pattern) {
    if (tok.column >= t.codes.size() || t.codes[tok.column] != tok.code) return false;
  }
  return true;
}

std::uint64_t pattern_weight(const Pattern& p, int exponent) {
  std::uint64_t len = p.tokens.size();
  std::uint64_t w = p.freq * len;
  if (exponent == 2) w *= len;
  return w;
}

Scores score_instance(const EncodedInstance& t, const PatternBank& bank, const ScoringConfig& cfg) {
  cfg.validate();
  std::uint64_t ns = 0, as = 0;
  for (const auto& p : bank.cnp) {
    if (is_subset(p.tokens, t)) ns += pattern_weight(p, cfg.exponent);
  }
  for (const auto& p : bank.cap) {
    if (is_subset(p.tokens, t)) as += pattern_weight(p, cfg.exponent);
  }
  return {static_cast<double>(ns), static_cast<double>(as)};
}

ScoringIndex::Side ScoringIndex::build(const std::vector<Pattern>& patterns, int exponent) {
  std::unordered_map<std::uint64_t, std::uint64_t> token_count;
  auto key = [](const Token& t) { return (static_cast<std::uint64_t>(t.column) << 32) | t.code; };
  for (const auto& p : patterns) {
    for (const auto& t : p.tokens) ++token_count[key(t)];
  }
  auto rarer = [&](const Token& a, const Token& b) {
    const auto ca = token_count[key(a)], cb = token_count[key(b)];
    return ca != cb ? ca < cb : a < b;
  };

  struct Staged {
    Token anchor;
    std::vector<Token> rest;
    std::uint64_t weight;
  };
  std::vector<Staged> staged;
  staged.reserve(patterns.size());
  for (const auto& p : patterns) {
    if (p.tokens.empty()) continue;  // weight is zero
    std::vector<Token> order = p.tokens;
    std::sort(order.begin(), order.end(), rarer);
    staged.push_back({order.front(), {order.begin() + 1, order.end()}, pattern_weight(p, exponent)});
  }
  std::stable_sort(staged.begin(), staged.end(),
                   [](const Staged& a, const Staged& b) { return a.anchor < b.anchor; });

  Side side;
  side.token_end.reserve(staged.size());
  side.weights.reserve(staged.size());
  for (std::size_t i = 0; i < staged.size(); ++i) {
    const auto& st = staged[i];
    if (side.bucket.size() <= st.anchor.column) side.bucket.resize(st.anchor.column + 1);
    auto& col = side.bucket[st.anchor.column];
    if (col.size() <= st.anchor.code) col.resize(static_cast<std::size_t>(st.anchor.code) + 1, {0, 0});
    auto& range = col[st.anchor.code];
    if (range.first == range.second) range.first = static_cast<std::uint32_t>(i);
    range.second = static_cast<std::uint32_t>(i + 1);
    side.tokens.insert(side.tokens.end(), st.rest.begin(), st.rest.end());
    side.token_end.push_back(static_cast<std::uint32_t>(side.tokens.size()));
    side.weights.push_back(st.weight);
  }
  return side;
}

ScoringIndex::ScoringIndex(const PatternBank& bank, int exponent)
    : normal_(build(bank.cnp, exponent)), anomalous_(build(bank.cap, exponent)) {}

std::uint64_t ScoringIndex::sum(const Side& side, const EncodedInstance& t) {
  std::uint64_t total = 0;
  const Code* codes = t.codes.data();
  const std::size_t width = t.codes.size();
  const std::size_t cols = std::min(side.bucket.size(), width);
  for (std::size_t c = 0; c < cols; ++c) {
    const Code code = codes[c];
    const auto& col = side.bucket[c];
    if (code == kAbsent || code >= col.size()) continue;
    const auto [first, end] = col[code];
    std::uint32_t tok = first == 0 ? 0 : side.token_end[first - 1];
    for (std::uint32_t e = first; e < end; ++e) {
      const std::uint32_t stop = side.token_end[e];
      bool all = true;
      for (; tok < stop; ++tok) {
        const Token& k = side.tokens[tok];
        if (k.column >= width || codes[k.column] != k.code) {
          all = false;
          break;
        }
      }
      tok = stop;
      if (all) total += side.weights[e];
    }
  }
  return total;
}

Scores ScoringIndex::score(const EncodedInstance& t) const {
  return {static_cast<double>(sum(normal_, t)), static_cast<double>(sum(anomalous_, t))};
}

BatchStats batch_stats(std::span<const double> ns_values) {
  BatchStats s;
  s.n = ns_values.size();
  if (s.n == 0) return s;
  double total = 0.0;
  for (double v : ns_values) total += v;
  s.ns_ave = total / static_cast<double>(s.n);
  if (s.n < 2) return s;
  double sq = 0.0;
  for (double v : ns_values) sq += (v - s.ns_ave) * (v - s.ns_ave);
  s.ns_std = std::sqrt(sq / static_cast<double>(s.n - 1));
  return s;
}

std::vector<Verdict> classify_scores(std::span<const Scores> scores,
                                     std::span<const EncodedInstance> test, const ScoringConfig& cfg) {
  cfg.validate();
  std::vector<double> ns(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) ns[i] = scores[i].ns;
  const auto stats = batch_stats(ns);
  const double threshold = stats.ns_ave - cfg.r * stats.ns_std;

  std::vector<Verdict> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    auto& v = out[i];
    v.origin = test[i].origin;
    v.truth = test[i].label;
    v.ns = scores[i].ns;
    v.as = scores[i].as;
    v.margin = v.as - v.ns;
    if (v.as >= v.ns) {
      v.regulation = (v.as == 0.0 && v.ns == 0.0) ? Regulation::r2 : Regulation::r1;
    } else if (v.ns < threshold) {
      v.regulation = Regulation::r3;
    }
    v.predicted = v.regulation == Regulation::none ? Label::normal : Label::anomalous;
  }
  return out;
}

std::vector<Verdict> classify_batch(std::span<const EncodedInstance> test, const PatternBank& bank,
                                    const ScoringConfig& cfg, int threads) {
  cfg.validate();
  if (test.empty()) throw Error(ErrorKind::invalid_config, "cannot classify an empty test set", "test");
  const ScoringIndex index(bank, cfg.exponent);
  std::vector<Scores> scores(test.size());
  parallel_chunks(test.size(), resolve_threads(threads), [&](std::size_t b, std::size_t e, int) {
    for (std::size_t i = b; i < e; ++i) scores[i] = index.score(test[i]);
  });
  return classify_scores(scores, test, cfg);
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void write_verdicts_csv(std::ostream& out, std::span<const Verdict> verdicts) {
  out << "origin,ns,as,margin,regulation,predicted,truth\n";
  for (const auto& v : verdicts) {
    out << v.origin << ',' << format_number(v.ns) << ',' << format_number(v.as) << ','
        << format_number(v.margin) << ',' << to_string(v.regulation) << ','
        << to_string(v.predicted) << ',' << to_string(v.truth) << '\n';
  }
}

nlohmann::json to_json(const ScoringConfig& cfg) {
  return {{"p", cfg.exponent}, {"r", cfg.r}};
}

}  // namespace ig
