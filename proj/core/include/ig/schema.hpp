#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace ig {

enum class ColumnKind { numeric, categorical };

std::string_view to_string(ColumnKind kind);

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::categorical;

  bool operator==(const ColumnSpec&) const = default;
};

/// Per-category prefix cap, applied in file order while loading. Rows whose
/// label binarizes to normal are capped by `normal_cap` instead (uncapped when
/// absent), since normal traffic usually has no category value.
struct CategoryCap {
  std::string column;
  std::size_t cap = 0;
  std::optional<std::size_t> normal_cap;

  bool operator==(const CategoryCap&) const = default;
};

/// Layout of a raw dataset file. `columns` lists every column of the file in
/// order, including the label and dropped columns; features are the rest.
struct Schema {
  std::vector<ColumnSpec> columns;
  std::string label_column;
  std::set<std::string> normal_values;
  std::set<std::string> drop_columns;
  bool has_header = false;
  std::optional<CategoryCap> category_cap;

  /// Feature columns in file order (columns minus label and drop_columns).
  std::vector<ColumnSpec> feature_columns() const;
  std::size_t label_index() const;

  /// Throws ig::Error naming the offending field if an invariant is violated.
  void validate() const;

  bool operator==(const Schema&) const = default;
};

Schema schema_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Schema& schema);

/// Reads and validates a JSON schema file.
Schema load_schema(const std::filesystem::path& path);

}  // namespace ig
