#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ig/common.hpp"

namespace ig {

/// Sparse token set with an occurrence count. Columns strictly ascending.
struct Pattern {
  std::vector<Token> tokens;
  std::uint64_t freq = 0;

  std::size_t size() const noexcept { return tokens.size(); }
  bool operator==(const Pattern&) const = default;
};

/// Canonical order of patterns inside a bank: lexicographic by tokens.
inline bool token_order(const Pattern& a, const Pattern& b) { return a.tokens < b.tokens; }

/// Hash multiset of token sequences. Token storage is one contiguous arena;
/// lookup is open addressing over 32-bit entry indices.
class PatternTable {
 public:
  PatternTable();

  /// Adds `freq` occurrences of the token sequence (must be canonical).
  void add(std::span<const Token> tokens, std::uint64_t freq);
  /// Adds every entry of `other`.
  void merge(const PatternTable& other);

  std::size_t size() const noexcept { return entries_.size(); }
  /// Total occurrences across entries.
  std::uint64_t total() const noexcept { return total_; }

  /// All patterns, sorted by token_order. Independent of insertion order.
  std::vector<Pattern> sorted() const;

 private:
  struct Entry {
    std::uint64_t hash;
    std::uint64_t offset;
    std::uint32_t length;
    std::uint64_t freq;
  };

  std::span<const Token> tokens_of(const Entry& e) const {
    return {arena_.data() + e.offset, e.length};
  }
  void grow();

  std::vector<Token> arena_;
  std::vector<Entry> entries_;
  std::vector<std::uint32_t> slots_;  // entry index + 1; 0 = empty
  std::uint64_t total_ = 0;
};

std::uint64_t hash_tokens(std::span<const Token> tokens);

}  // namespace ig
