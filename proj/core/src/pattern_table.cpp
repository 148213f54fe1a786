#include "ig/pattern.hpp"

#include <algorithm>

#include "ig/hash.hpp"

namespace ig {

std::uint64_t hash_tokens(std::span<const Token> tokens) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ tokens.size();
  for (const auto& t : tokens) {
    h = mix64(h ^ ((static_cast<std::uint64_t>(t.column) << 32) | t.code));
  }
  return h;
}

PatternTable::PatternTable() : slots_(64, 0) {}

void PatternTable::grow() {
  std::vector<std::uint32_t> next(slots_.size() * 2, 0);
  const std::size_t mask = next.size() - 1;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    std::size_t s = entries_[i].hash & mask;
    while (next[s] != 0) s = (s + 1) & mask;
    next[s] = static_cast<std::uint32_t>(i + 1);
  }
  slots_ = std::move(next);
}

void PatternTable::add(std::span<const Token> tokens, std::uint64_t freq) {
  if (freq == 0) return;
  total_ += freq;
  const std::uint64_t h = hash_tokens(tokens);
  const std::size_t mask = slots_.size() - 1;
  std::size_t s = h & mask;
  while (slots_[s] != 0) {
    auto& e = entries_[slots_[s] - 1];
    if (e.hash == h && e.length == tokens.size() &&
        std::equal(tokens.begin(), tokens.end(), arena_.begin() + static_cast<std::ptrdiff_t>(e.offset))) {
      e.freq += freq;
      return;
    }
    s = (s + 1) & mask;
  }
  slots_[s] = static_cast<std::uint32_t>(entries_.size() + 1);
  entries_.push_back({h, arena_.size(), static_cast<std::uint32_t>(tokens.size()), freq});
  arena_.insert(arena_.end(), tokens.begin(), tokens.end());
  // load factor <= 1/2
  if (entries_.size() * 2 > slots_.size()) grow();
}

void PatternTable::merge(const PatternTable& other) {
  for (const auto& e : other.entries_) add(other.tokens_of(e), e.freq);
}

std::vector<Pattern> PatternTable::sorted() const {
  std::vector<Pattern> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) {
    auto t = tokens_of(e);
    out.push_back({std::vector<Token>(t.begin(), t.end()), e.freq});
  }
  std::sort(out.begin(), out.end(), token_order);
  return out;
}

}  // namespace ig
