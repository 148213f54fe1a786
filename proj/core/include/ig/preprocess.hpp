#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ig/common.hpp"
#include "ig/ingest.hpp"

namespace ig {

/// How numeric columns become categories.
///   sigma_bins: code = clamp(round((x - mean) / std), -3, 3), seven bins.
///   exact:      one code per distinct raw string.
enum class BinningMode { sigma_bins, exact };

std::string_view to_string(BinningMode mode);
BinningMode parse_binning(std::string_view s);

/// Category assigned to missing or unparseable cells.
inline constexpr std::string_view kNotNumber = "NotNumber";

inline constexpr int kMaxSigmaBin = 3;
inline constexpr Code kSigmaBinCount = 2 * kMaxSigmaBin + 1;
/// In sigma_bins mode numeric columns use codes 0..6 for bins -3..+3 and this
/// code for missing cells.
inline constexpr Code kSigmaMissingCode = kSigmaBinCount;

enum class StatsKind : std::uint8_t { numeric = 0, categorical = 1, token = 2 };

std::string_view to_string(StatsKind kind);

struct ColumnStats {
  struct Column {
    std::string name;
    StatsKind kind = StatsKind::categorical;
    // numeric only: population mean and standard deviation over finite cells
    double mean = 0.0;
    double std = 0.0;
    std::size_t finite = 0;
    std::size_t missing = 0;
    /// code -> raw value, dense, first-appearance order. Used by categorical
    /// columns, numeric columns in exact mode, and token columns.
    std::vector<std::string> values;
    std::unordered_map<std::string, Code> index;

    /// True when codes come from the sigma bin rule rather than `values`.
    bool binned(BinningMode mode) const { return kind == StatsKind::numeric && mode == BinningMode::sigma_bins; }
    Code intern(const std::string& value);
    /// Number of valid codes in this column.
    std::size_t cardinality(BinningMode mode) const;

    bool operator==(const Column& o) const {
      return name == o.name && kind == o.kind && mean == o.mean && std == o.std &&
             finite == o.finite && missing == o.missing && values == o.values;
    }
  };

  BinningMode mode = BinningMode::sigma_bins;
  std::vector<Column> columns;

  std::size_t width() const noexcept { return columns.size(); }
  bool operator==(const ColumnStats&) const = default;
};

struct EncodedInstance {
  /// One code per feature column (kAbsent only in pre-tokenized data).
  std::vector<Code> codes;
  Label label = Label::normal;
  /// Row index in the pre-contradiction sequence.
  std::size_t origin = 0;

  /// Token set {(c, codes[c])}, ascending by column, absent columns skipped.
  std::vector<Token> tokens() const;

  bool operator==(const EncodedInstance&) const = default;
};

struct EncodedDataset {
  std::vector<EncodedInstance> instances;
  ColumnStats stats;
  /// Origins removed by anti-contradiction, ascending.
  std::vector<std::size_t> removed;
  /// Row count before anti-contradiction.
  std::size_t original_count = 0;

  bool operator==(const EncodedDataset&) const = default;
};

/// True for cells that mean "no value": empty after trimming, or "?".
bool is_missing_cell(std::string_view cell);

/// Parses a finite number; nullopt for missing, unparseable or non-finite cells.
std::optional<double> parse_numeric(std::string_view cell);

/// Sigma bin in [-3, 3] of a finite value. A zero std maps everything to 0.
int sigma_bin(double x, double mean, double std);

ColumnStats compute_column_stats(const RawDataset& raw, BinningMode mode = BinningMode::sigma_bins,
                                 int threads = 1);

/// Code matrix, row-major, one row per raw row.
std::vector<std::vector<Code>> discretize(const RawDataset& raw, const ColumnStats& stats,
                                          int threads = 1);

/// Discretizes and wraps rows as instances. No contradiction removal.
EncodedDataset encode(const RawDataset& raw, const ColumnStats& stats, int threads = 1);

/// Drops every instance whose code array also occurs under the other label.
EncodedDataset remove_contradictions(EncodedDataset ds);

/// compute_column_stats, encode, remove_contradictions.
EncodedDataset preprocess(const RawDataset& raw, BinningMode mode = BinningMode::sigma_bins,
                          int threads = 1);

/// Encodes pre-tokenized rows: every distinct token becomes a column of its
/// own (first-appearance order) with a single code 0; missing tokens are kAbsent.
EncodedDataset encode_tokenized(const TokenizedRows& rows);

}  // namespace ig
