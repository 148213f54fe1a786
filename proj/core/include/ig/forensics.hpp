#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ig/mining.hpp"

namespace ig {

enum class BankSide { cnp, cap };

std::string_view to_string(BankSide side);
BankSide parse_side(std::string_view s);

/// Ranking of intrusion paths: support (freq) descending, then length
/// descending, then tokens ascending. Total on any one bank side.
bool forensic_order(const Pattern& a, const Pattern& b);

struct ForensicsEntry {
  std::size_t rank = 0;  // 1-based
  Pattern pattern;
  std::uint64_t support = 0;
  std::vector<std::string> decoded;  // empty when no stats were supplied
};

/// First k patterns of one side under forensic_order. k must be >= 1.
std::vector<ForensicsEntry> top_patterns(const PatternBank& bank, BankSide side, std::size_t k,
                                         const ColumnStats* stats = nullptr);

/// "name: z∈[0.5,1.5)σ" for sigma bins, "name = value" for dictionary codes,
/// the bare token for pre-tokenized columns.
std::string decode_token(const Token& token, const ColumnStats& stats);
std::vector<std::string> decode_pattern(const Pattern& p, const ColumnStats& stats);

/// Column buckets comparing two patterns: green = same token in both,
/// red = both have the column with different codes, blue = column in one only.
struct PatternDiff {
  std::vector<std::uint32_t> green;
  std::vector<std::uint32_t> red;
  std::vector<std::uint32_t> blue;

  bool operator==(const PatternDiff&) const = default;
};

PatternDiff diff_patterns(const Pattern& a, const Pattern& b);

/// For each entry in `paths`, the entry of `contrast` sharing the most
/// tokens with it (lowest rank on ties), with their diff.
struct Contrast {
  std::size_t path_rank = 0;
  std::size_t contrast_rank = 0;
  PatternDiff diff;
};
std::vector<Contrast> contrast_paths(const std::vector<ForensicsEntry>& paths,
                                     const std::vector<ForensicsEntry>& contrast);

nlohmann::json forensics_to_json(BankSide side, const std::vector<ForensicsEntry>& entries,
                                 const std::vector<ForensicsEntry>& contrast, const ColumnStats* stats);
std::string forensics_to_text(BankSide side, const std::vector<ForensicsEntry>& entries,
                              const std::vector<ForensicsEntry>& contrast, const ColumnStats* stats);
/// Graph of top paths; edges join paths that share tokens, labelled with
/// the shared-token count.
std::string forensics_to_dot(BankSide side, const std::vector<ForensicsEntry>& entries,
                             const ColumnStats* stats);

}  // namespace ig
