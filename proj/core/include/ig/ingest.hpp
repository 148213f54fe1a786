#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ig/common.hpp"
#include "ig/schema.hpp"

namespace ig {

/// Feature cells of a loaded dataset, row-major, in file order.
/// Cells are raw strings; typing happens in preprocessing.
struct RawDataset {
  Schema schema;
  std::vector<ColumnSpec> features;
  std::vector<std::vector<std::string>> rows;
  std::vector<Label> labels;
  /// Labels that were empty after trimming. They still count as anomalous.
  std::size_t label_warnings = 0;

  std::size_t size() const noexcept { return rows.size(); }
  bool operator==(const RawDataset&) const = default;
};

/// Normal iff the trimmed raw label is one of the schema's normal values.
/// Increments `*warnings` for an empty label.
Label binarize_label(std::string_view raw_label, const Schema& schema,
                     std::size_t* warnings = nullptr);

/// Loads the first `limit` rows (after category caps) of a CSV file in file
/// order. Throws ig::Error(arity) with the line number on a short or long row.
RawDataset load_dataset(const std::filesystem::path& path, const Schema& schema,
                        std::optional<std::size_t> limit = std::nullopt);

/// Appends `tail` to `head`. Both must share one schema.
RawDataset concat(RawDataset head, const RawDataset& tail);

/// One instance per line: comma-separated opaque tokens, a TAB, then the label.
struct TokenizedRows {
  std::vector<std::vector<std::string>> tokens;
  std::vector<Label> labels;
  std::vector<std::string> raw_labels;
};

TokenizedRows parse_tokenized(std::istream& in, const std::set<std::string>& normal_values);
TokenizedRows load_tokenized(const std::filesystem::path& path,
                             const std::set<std::string>& normal_values);

}  // namespace ig
