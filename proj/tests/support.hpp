#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ig/ig.hpp"

namespace ig::test {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(IG_FIXTURE_DIR) / name;
}

inline std::filesystem::path schema_file(const std::string& name) {
  return std::filesystem::path(IG_SCHEMA_DIR) / name;
}

/// Scratch directory unique to one test case; wiped on creation.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ig_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline EncodedDataset tokenized(const std::string& text) {
  std::istringstream in(text);
  return encode_tokenized(parse_tokenized(in, {"normal"}));
}

/// The a..g worked example: rows 0..6 train, 7..10 test.
inline EncodedDataset worked_example() {
  return remove_contradictions(encode_tokenized(load_tokenized(fixture("worked_example.tok"), {"normal"})));
}

inline std::vector<EncodedInstance> slice(const EncodedDataset& ds, std::size_t b, std::size_t e) {
  return {ds.instances.begin() + static_cast<std::ptrdiff_t>(b), ds.instances.begin() + static_cast<std::ptrdiff_t>(e)};
}

/// Pattern as a sorted string of token names ("abe").
inline std::string names(const Pattern& p, const ColumnStats& stats) {
  std::string s;
  for (const auto& t : p.tokens) s += decode_token(t, stats);
  std::sort(s.begin(), s.end());
  return s;
}

inline std::map<std::string, std::uint64_t> named(const std::vector<Pattern>& ps, const ColumnStats& stats) {
  std::map<std::string, std::uint64_t> m;
  for (const auto& p : ps) m[names(p, stats)] = p.freq;
  return m;
}

/// Random full-width instances. Codes are drawn from a skewed distribution
/// so that intersections are frequent.
inline std::vector<EncodedInstance> random_instances(std::mt19937_64& rng, std::size_t n, std::size_t width,
                                                     Code codes, double anomalous_share = 0.5) {
  std::vector<EncodedInstance> out(n);
  std::uniform_int_distribution<Code> code(0, codes - 1);
  std::bernoulli_distribution coin(anomalous_share), keep_zero(0.5);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].codes.resize(width);
    for (auto& c : out[i].codes) c = keep_zero(rng) ? 0 : code(rng);
    out[i].label = coin(rng) ? Label::anomalous : Label::normal;
    out[i].origin = i;
  }
  return out;
}

/// Random sparse patterns on the same width, freq in [1, 5].
inline std::vector<Pattern> random_patterns(std::mt19937_64& rng, std::size_t n, std::size_t width, Code codes) {
  std::vector<Pattern> out;
  std::uniform_int_distribution<Code> code(0, codes - 1);
  std::uniform_int_distribution<std::uint64_t> freq(1, 5);
  std::bernoulli_distribution pick(0.3);
  while (out.size() < n) {
    Pattern p;
    for (std::uint32_t c = 0; c < width; ++c) {
      if (pick(rng)) p.tokens.push_back({c, code(rng)});
    }
    if (p.tokens.empty()) continue;
    p.freq = freq(rng);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace ig::test
