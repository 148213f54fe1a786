#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ig/mining.hpp"

namespace ig {

struct ScoringConfig {
  /// Length exponent in freq * len^p. Only 1 and 2 are supported.
  int exponent = 2;
  /// Regulation 3 multiplier on the normal-score standard deviation.
  double r = 0.1;

  void validate() const;
  bool operator==(const ScoringConfig&) const = default;
};

enum class Regulation : std::uint8_t { none = 0, r1 = 1, r2 = 2, r3 = 3 };

std::string_view to_string(Regulation reg);

struct Scores {
  double ns = 0.0;
  double as = 0.0;

  bool operator==(const Scores&) const = default;
};

struct Verdict {
  std::size_t origin = 0;
  double ns = 0.0;
  double as = 0.0;
  /// as - ns; the continuous anomaly score used for ROC curves.
  double margin = 0.0;
  Regulation regulation = Regulation::none;
  Label predicted = Label::normal;
  Label truth = Label::normal;

  bool operator==(const Verdict&) const = default;
};

struct BatchStats {
  double ns_ave = 0.0;
  /// Sample standard deviation (n - 1 denominator); 0 when n < 2.
  double ns_std = 0.0;
  std::size_t n = 0;
};

/// True iff every token of the pattern occurs in the instance.
bool is_subset(std::span<const Token> pattern, const EncodedInstance& t);

/// Pattern weight freq * len^p, exact.
std::uint64_t pattern_weight(const Pattern& p, int exponent);

/// Direct scan over every bank pattern.
Scores score_instance(const EncodedInstance& t, const PatternBank& bank, const ScoringConfig& cfg);

/// Subset-query index over a bank. Each pattern is filed under one anchor
/// token (its rarest token within the bank side), so a query visits only the
/// patterns whose anchor the instance contains and verifies them fully.
class ScoringIndex {
 public:
  ScoringIndex(const PatternBank& bank, int exponent);

  Scores score(const EncodedInstance& t) const;

 private:
  // Patterns grouped by anchor (their rarest token within the side). Each
  // bucket is a contiguous run of entries; an entry's remaining tokens are
  // stored rarest-first in `tokens`.
  struct Side {
    std::vector<Token> tokens;
    std::vector<std::uint32_t> token_end;  // per entry, exclusive end into tokens
    std::vector<std::uint64_t> weights;
    // bucket[column][code] -> [first entry, end entry)
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> bucket;
  };

  static Side build(const std::vector<Pattern>& patterns, int exponent);
  static std::uint64_t sum(const Side& side, const EncodedInstance& t);

  Side normal_;
  Side anomalous_;
};

BatchStats batch_stats(std::span<const double> ns_values);

/// Scores every test instance, then applies the regulation chain:
///   as >= ns                   -> anomalous (R2 when both are zero, else R1)
///   ns < ns_ave - r * ns_std   -> anomalous (R3)
///   otherwise                  -> normal
/// Throws ig::Error(invalid_config) on an empty test set.
std::vector<Verdict> classify_batch(std::span<const EncodedInstance> test, const PatternBank& bank,
                                    const ScoringConfig& cfg, int threads = 1);

/// Applies the regulation chain to precomputed scores.
std::vector<Verdict> classify_scores(std::span<const Scores> scores,
                                     std::span<const EncodedInstance> test, const ScoringConfig& cfg);

void write_verdicts_csv(std::ostream& out, std::span<const Verdict> verdicts);

nlohmann::json to_json(const ScoringConfig& cfg);

/// Shortest round-trip decimal rendering of a double.
std::string format_number(double v);

}  // namespace ig
