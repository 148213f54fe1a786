#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ig/pattern.hpp"
#include "ig/preprocess.hpp"

namespace ig {

/// Whether training instances themselves count as patterns, besides pairwise
/// intersections. `dedup` adds each distinct instance once, `multiset` once
/// per occurrence.
enum class IncludeInstances : std::uint8_t { off = 0, dedup = 1, multiset = 2 };

std::string_view to_string(IncludeInstances mode);
IncludeInstances parse_include_instances(std::string_view s);

struct MiningConfig {
  IncludeInstances include_instances = IncludeInstances::off;
  std::size_t min_pattern_len = 1;

  void validate() const;
  bool operator==(const MiningConfig&) const = default;
};

struct SideProvenance {
  std::uint64_t instances = 0;
  std::uint64_t unique_instances = 0;
  /// Unordered instance pairs, C(instances, 2).
  std::uint64_t pairs_examined = 0;
  /// Distinct patterns before coherence filtering.
  std::uint64_t patterns_generated = 0;
  std::uint64_t patterns_coherent = 0;

  bool operator==(const SideProvenance&) const = default;
};

struct MiningProvenance {
  SideProvenance normal;
  SideProvenance anomalous;

  bool operator==(const MiningProvenance&) const = default;
};

/// Coherent normal (cnp) and anomalous (cap) patterns, each in token order.
struct PatternBank {
  std::vector<Pattern> cnp;
  std::vector<Pattern> cap;
  MiningConfig config;
  MiningProvenance provenance;
  std::size_t width = 0;
  /// stats_fingerprint of the encoding the bank was mined under ("" if unknown).
  std::string dictionary_fingerprint;

  bool operator==(const PatternBank&) const = default;
};

/// Answers "is this token set contained in any indexed instance?". Each
/// token has a postings list of unique-row ids; tokens present in at least
/// 1/64 of the rows also get a bitset. Queries take the rarest token first:
/// a sparse list is scanned with rows checked rarest-token-first, otherwise
/// bitsets are intersected with an early exit on zero.
class SupersetIndex {
 public:
  explicit SupersetIndex(std::span<const EncodedInstance> instances);

  bool any_superset(std::span<const Token> pattern) const;
  std::size_t unique_rows() const noexcept { return rows_; }

 private:
  struct Posting {
    std::span<const std::uint32_t> rows;
    const std::uint64_t* bits = nullptr;  // null for sparse tokens
  };
  Posting postings(const Token& t) const;

  std::size_t width_ = 0;
  std::size_t rows_ = 0;
  std::size_t words_ = 0;  // bitset length in 64-bit words
  std::vector<Code> codes_;  // unique rows, row-major
  // postings_[column][code] -> ascending unique-row ids
  std::vector<std::vector<std::vector<std::uint32_t>>> postings_;
  // bit_offset_[column][code] -> offset into bits_, or npos
  std::vector<std::vector<std::size_t>> bit_offset_;
  std::vector<std::uint64_t> bits_;
};

/// Pairwise intersections of same-class instances, merged by token set,
/// empty intersections dropped, sorted in token order.
std::vector<Pattern> pairwise_patterns(std::span<const EncodedInstance> instances,
                                       const MiningConfig& cfg, int threads = 1);

/// Keeps the patterns that are not a subset of any `opposite` instance.
std::vector<Pattern> filter_coherent(std::vector<Pattern> patterns,
                                     std::span<const EncodedInstance> opposite, int threads = 1);

PatternBank mine(std::span<const EncodedInstance> train, const MiningConfig& cfg, int threads = 1);

/// Direct nested-loop transcription of the mining procedure with no indexing,
/// deduplication or parallelism. Equivalence oracle for `mine`.
PatternBank reference_mine(std::span<const EncodedInstance> train, const MiningConfig& cfg);

nlohmann::json to_json(const MiningConfig& cfg);
nlohmann::json to_json(const MiningProvenance& p);
nlohmann::json bank_to_json(const PatternBank& bank);

}  // namespace ig
