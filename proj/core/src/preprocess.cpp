#include "ig/preprocess.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>

#include "ig/csv.hpp"
#include "ig/hash.hpp"
#include "ig/parallel.hpp"

namespace ig {

std::string_view to_string(BinningMode mode) {
  return mode == BinningMode::sigma_bins ? "sigma_bins" : "exact";
}

BinningMode parse_binning(std::string_view s) {
  if (s == "sigma_bins") return BinningMode::sigma_bins;
  if (s == "exact") return BinningMode::exact;
  throw Error(ErrorKind::invalid_config,
              "unknown binning mode '" + std::string(s) + "'; expected sigma_bins or exact",
              "binning");
}

std::string_view to_string(StatsKind kind) {
  switch (kind) {
    case StatsKind::numeric: return "numeric";
    case StatsKind::categorical: return "categorical";
    case StatsKind::token: return "token";
  }
  return "categorical";
}

Code ColumnStats::Column::intern(const std::string& value) {
  auto [it, inserted] = index.emplace(value, static_cast<Code>(values.size()));
  if (inserted) values.push_back(value);
  return it->second;
}

std::size_t ColumnStats::Column::cardinality(BinningMode mode) const {
  return binned(mode) ? kSigmaBinCount + 1 : values.size();
}

std::vector<Token> EncodedInstance::tokens() const {
  std::vector<Token> out;
  out.reserve(codes.size());
  for (std::size_t c = 0; c < codes.size(); ++c) {
    if (codes[c] != kAbsent) out.push_back({static_cast<std::uint32_t>(c), codes[c]});
  }
  return out;
}

bool is_missing_cell(std::string_view cell) {
  const auto t = trim(cell);
  return t.empty() || t == "?";
}

std::optional<double> parse_numeric(std::string_view cell) {
  const auto t = trim(cell);
  if (t.empty()) return std::nullopt;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (*first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

int sigma_bin(double x, double mean, double std) {
  if (!(std > 0.0)) return 0;
  const double z = std::round((x - mean) / std);  // half away from zero
  if (z >= kMaxSigmaBin) return kMaxSigmaBin;
  if (z <= -kMaxSigmaBin) return -kMaxSigmaBin;
  return static_cast<int>(z);
}

namespace {

void fill_column(ColumnStats::Column& col, const RawDataset& raw, std::size_t c, BinningMode mode) {
  if (col.kind == StatsKind::numeric) {
    // Welford in row order
    double mean = 0.0, m2 = 0.0;
    std::size_t n = 0;
    for (const auto& row : raw.rows) {
      const auto v = parse_numeric(row[c]);
      if (!v) {
        ++col.missing;
        if (mode == BinningMode::exact) col.intern(std::string(kNotNumber));
        continue;
      }
      ++n;
      const double d = *v - mean;
      mean += d / static_cast<double>(n);
      m2 += d * (*v - mean);
      if (mode == BinningMode::exact) col.intern(trim(row[c]));
    }
    col.finite = n;
    col.mean = n ? mean : 0.0;
    col.std = n ? std::sqrt(std::max(0.0, m2 / static_cast<double>(n))) : 0.0;
    return;
  }
  for (const auto& row : raw.rows) {
    if (is_missing_cell(row[c])) {
      ++col.missing;
      col.intern(std::string(kNotNumber));
    } else {
      col.intern(trim(row[c]));
    }
  }
}

Code encode_cell(const ColumnStats::Column& col, BinningMode mode, const std::string& cell) {
  if (col.kind == StatsKind::numeric) {
    const auto v = parse_numeric(cell);
    if (mode == BinningMode::sigma_bins) {
      if (!v) return kSigmaMissingCode;
      return static_cast<Code>(sigma_bin(*v, col.mean, col.std) + kMaxSigmaBin);
    }
    const auto key = v ? trim(cell) : std::string(kNotNumber);
    auto it = col.index.find(key);
    if (it == col.index.end()) {
      throw Error(ErrorKind::unknown_token, "value '" + key + "' not in dictionary of " + col.name,
                  col.name);
    }
    return it->second;
  }
  const auto key = is_missing_cell(cell) ? std::string(kNotNumber) : trim(cell);
  auto it = col.index.find(key);
  if (it == col.index.end()) {
    throw Error(ErrorKind::unknown_token, "value '" + key + "' not in dictionary of " + col.name,
                col.name);
  }
  return it->second;
}

}  // namespace

ColumnStats compute_column_stats(const RawDataset& raw, BinningMode mode, int threads) {
  ColumnStats stats;
  stats.mode = mode;
  stats.columns.resize(raw.features.size());
  for (std::size_t c = 0; c < raw.features.size(); ++c) {
    stats.columns[c].name = raw.features[c].name;
    stats.columns[c].kind =
        raw.features[c].kind == ColumnKind::numeric ? StatsKind::numeric : StatsKind::categorical;
  }
  parallel_chunks(stats.columns.size(), resolve_threads(threads),
                  [&](std::size_t b, std::size_t e, int) {
                    for (std::size_t c = b; c < e; ++c) fill_column(stats.columns[c], raw, c, mode);
                  });
  return stats;
}

std::vector<std::vector<Code>> discretize(const RawDataset& raw, const ColumnStats& stats,
                                          int threads) {
  if (stats.width() != raw.features.size()) {
    throw Error(ErrorKind::invalid_config, "column stats do not match the dataset width");
  }
  std::vector<std::vector<Code>> out(raw.rows.size(), std::vector<Code>(stats.width()));
  parallel_chunks(raw.rows.size(), resolve_threads(threads),
                  [&](std::size_t b, std::size_t e, int) {
                    for (std::size_t r = b; r < e; ++r) {
                      for (std::size_t c = 0; c < stats.width(); ++c) {
                        out[r][c] = encode_cell(stats.columns[c], stats.mode, raw.rows[r][c]);
                      }
                    }
                  });
  return out;
}

EncodedDataset encode(const RawDataset& raw, const ColumnStats& stats, int threads) {
  auto matrix = discretize(raw, stats, threads);
  EncodedDataset ds;
  ds.stats = stats;
  ds.original_count = matrix.size();
  ds.instances.reserve(matrix.size());
  for (std::size_t r = 0; r < matrix.size(); ++r) {
    ds.instances.push_back({std::move(matrix[r]), raw.labels[r], r});
  }
  return ds;
}

EncodedDataset remove_contradictions(EncodedDataset ds) {
  // bit 0: seen as normal, bit 1: seen as anomalous
  std::unordered_map<std::vector<Code>, std::uint8_t, CodeVectorHash> seen;
  seen.reserve(ds.instances.size());
  for (const auto& inst : ds.instances) {
    seen[inst.codes] |= inst.label == Label::normal ? 1 : 2;
  }
  std::vector<EncodedInstance> kept;
  kept.reserve(ds.instances.size());
  for (auto& inst : ds.instances) {
    if (seen[inst.codes] == 3) {
      ds.removed.push_back(inst.origin);
    } else {
      kept.push_back(std::move(inst));
    }
  }
  std::sort(ds.removed.begin(), ds.removed.end());
  ds.instances = std::move(kept);
  return ds;
}

EncodedDataset preprocess(const RawDataset& raw, BinningMode mode, int threads) {
  return remove_contradictions(encode(raw, compute_column_stats(raw, mode, threads), threads));
}

EncodedDataset encode_tokenized(const TokenizedRows& rows) {
  EncodedDataset ds;
  ds.stats.mode = BinningMode::exact;
  std::unordered_map<std::string, std::uint32_t> column_of;
  for (const auto& toks : rows.tokens) {
    for (const auto& t : toks) {
      if (column_of.emplace(t, static_cast<std::uint32_t>(ds.stats.columns.size())).second) {
        ColumnStats::Column col;
        col.name = t;
        col.kind = StatsKind::token;
        col.intern(t);
        ds.stats.columns.push_back(std::move(col));
      }
    }
  }
  const std::size_t width = ds.stats.columns.size();
  for (std::size_t r = 0; r < rows.tokens.size(); ++r) {
    EncodedInstance inst{std::vector<Code>(width, kAbsent), rows.labels[r], r};
    for (const auto& t : rows.tokens[r]) inst.codes[column_of.at(t)] = 0;
    ds.instances.push_back(std::move(inst));
  }
  ds.original_count = rows.tokens.size();
  return ds;
}

}  // namespace ig
