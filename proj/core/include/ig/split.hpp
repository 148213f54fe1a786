#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ig/preprocess.hpp"

namespace ig {

enum class SplitMode {
  /// Cut the pre-contradiction row sequence at round_half_up(K * r / 100).
  positional,
  /// Take the first round_half_up(n * r / 100) instances of each class.
  per_class,
};

std::string_view to_string(SplitMode mode);
SplitMode parse_split_mode(std::string_view s);

struct SplitSpec {
  int train_ratio = 10;  // percent
  SplitMode mode = SplitMode::positional;

  /// 1..99 accepted; sweeps default to multiples of ten.
  void validate() const;
};

struct SplitResult {
  std::vector<EncodedInstance> train;
  std::vector<EncodedInstance> test;
  /// Origin index of the cut (positional mode). In per-class mode this is
  /// the positional boundary for reference only.
  std::size_t boundary = 0;
};

struct ClassCounts {
  std::size_t normal = 0;
  std::size_t anomalous = 0;

  std::size_t total() const noexcept { return normal + anomalous; }
  bool operator==(const ClassCounts&) const = default;
};

/// round_half_up(count * ratio / 100) in exact integer arithmetic.
std::size_t split_boundary(std::size_t count, int ratio);

/// Throws ig::Error(degenerate_split) when either side would be empty.
SplitResult sequential_split(const EncodedDataset& ds, const SplitSpec& spec);

ClassCounts class_counts(std::span<const EncodedInstance> instances);

/// Parses "R" or "lo:hi:step" into a ratio list.
std::vector<int> parse_ratios(std::string_view text);

}  // namespace ig
