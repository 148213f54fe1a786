#include "ig/split.hpp"

#include <charconv>
#include <string>

namespace ig {

std::string_view to_string(SplitMode mode) {
  return mode == SplitMode::positional ? "positional" : "per-class";
}

SplitMode parse_split_mode(std::string_view s) {
  if (s == "positional") return SplitMode::positional;
  if (s == "per-class" || s == "per_class") return SplitMode::per_class;
  throw Error(ErrorKind::invalid_config,
              "unknown split mode '" + std::string(s) + "'; expected positional or per-class",
              "split");
}

void SplitSpec::validate() const {
  if (train_ratio < 1 || train_ratio > 99) {
    throw Error(ErrorKind::invalid_config,
                "train ratio " + std::to_string(train_ratio) + " outside 1..99", "ratio");
  }
}

std::size_t split_boundary(std::size_t count, int ratio) {
  return (count * static_cast<std::size_t>(ratio) + 50) / 100;
}

SplitResult sequential_split(const EncodedDataset& ds, const SplitSpec& spec) {
  spec.validate();
  SplitResult out;
  out.boundary = split_boundary(ds.original_count, spec.train_ratio);
  if (spec.mode == SplitMode::positional) {
    for (const auto& inst : ds.instances) {
      (inst.origin < out.boundary ? out.train : out.test).push_back(inst);
    }
  } else {
    const auto counts = class_counts(ds.instances);
    const std::size_t n_train = split_boundary(counts.normal, spec.train_ratio);
    const std::size_t m_train = split_boundary(counts.anomalous, spec.train_ratio);
    std::size_t n_seen = 0, m_seen = 0;
    for (const auto& inst : ds.instances) {
      const bool to_train = inst.label == Label::normal ? n_seen++ < n_train : m_seen++ < m_train;
      (to_train ? out.train : out.test).push_back(inst);
    }
  }
  if (out.train.empty() || out.test.empty()) {
    throw Error(ErrorKind::degenerate_split,
                "degenerate split: ratio " + std::to_string(spec.train_ratio) + " leaves " +
                    (out.train.empty() ? "train" : "test") + " empty",
                "ratio");
  }
  return out;
}

ClassCounts class_counts(std::span<const EncodedInstance> instances) {
  ClassCounts c;
  for (const auto& inst : instances) {
    (inst.label == Label::normal ? c.normal : c.anomalous) += 1;
  }
  return c;
}

namespace {

int parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::invalid_config, "not an integer: '" + std::string(s) + "'", "ratios");
  }
  return v;
}

}  // namespace

std::vector<int> parse_ratios(std::string_view text) {
  std::vector<int> out;
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos) {
    out.push_back(parse_int(text));
  } else {
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) {
      throw Error(ErrorKind::invalid_config, "sweep must be lo:hi:step", "sweep");
    }
    const int lo = parse_int(text.substr(0, c1));
    const int hi = parse_int(text.substr(c1 + 1, c2 - c1 - 1));
    const int step = parse_int(text.substr(c2 + 1));
    if (step <= 0 || lo > hi) {
      throw Error(ErrorKind::invalid_config, "sweep must be lo:hi:step with step > 0 and lo <= hi",
                  "sweep");
    }
    for (int r = lo; r <= hi; r += step) out.push_back(r);
  }
  for (int r : out) SplitSpec{r}.validate();
  return out;
}

}  // namespace ig
