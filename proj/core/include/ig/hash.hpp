#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ig {

inline std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

template <typename T>
std::uint64_t hash_words(std::span<const T> words) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ words.size();
  for (auto w : words) h = mix64(h ^ static_cast<std::uint64_t>(w));
  return h;
}

struct CodeVectorHash {
  template <typename T>
  std::size_t operator()(const std::vector<T>& v) const noexcept {
    return static_cast<std::size_t>(hash_words(std::span<const T>(v)));
  }
};

}  // namespace ig
