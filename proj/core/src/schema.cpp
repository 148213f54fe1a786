#include "ig/schema.hpp"

#include <fstream>
#include <unordered_set>

#include "ig/common.hpp"

namespace ig {

using nlohmann::json;

std::string_view to_string(ColumnKind kind) {
  return kind == ColumnKind::numeric ? "numeric" : "categorical";
}

std::vector<ColumnSpec> Schema::feature_columns() const {
  std::vector<ColumnSpec> out;
  for (const auto& c : columns) {
    if (c.name == label_column || drop_columns.count(c.name)) continue;
    out.push_back(c);
  }
  return out;
}

std::size_t Schema::label_index() const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == label_column) return i;
  }
  throw Error(ErrorKind::missing_label_column,
              "label column '" + label_column + "' is not among the schema columns",
              "label_column");
}

void Schema::validate() const {
  std::unordered_set<std::string> seen;
  for (const auto& c : columns) {
    if (c.name.empty()) {
      throw Error(ErrorKind::invalid_column, "column name must be non-empty", "columns");
    }
    if (!seen.insert(c.name).second) {
      throw Error(ErrorKind::duplicate_column, "duplicate column name '" + c.name + "'", c.name);
    }
  }
  if (label_column.empty() || !seen.count(label_column)) {
    throw Error(ErrorKind::missing_label_column,
                "label column '" + label_column + "' is not among the schema columns",
                "label_column");
  }
  if (drop_columns.count(label_column)) {
    throw Error(ErrorKind::label_dropped,
                "label column '" + label_column + "' is listed in drop_columns", "drop_columns");
  }
  for (const auto& d : drop_columns) {
    if (!seen.count(d)) {
      throw Error(ErrorKind::invalid_column, "drop column '" + d + "' is not a schema column",
                  "drop_columns");
    }
  }
  if (feature_columns().empty()) {
    throw Error(ErrorKind::no_feature_columns, "no feature columns", "columns");
  }
  if (category_cap) {
    if (!seen.count(category_cap->column)) {
      throw Error(ErrorKind::invalid_column,
                  "category_cap column '" + category_cap->column + "' is not a schema column",
                  "category_cap");
    }
  }
}

namespace {

template <typename T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw Error(ErrorKind::parse, std::string("schema is missing required key '") + key + "'", key);
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("schema key '") + key + "': " + e.what(), key);
  }
}

ColumnKind parse_kind(const std::string& s, const std::string& column) {
  if (s == "numeric") return ColumnKind::numeric;
  if (s == "categorical") return ColumnKind::categorical;
  throw Error(ErrorKind::parse,
              "column '" + column + "' has kind '" + s + "'; expected numeric or categorical",
              column);
}

}  // namespace

Schema schema_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::parse, "schema must be a JSON object");
  Schema s;
  const auto cols = required<json>(j, "columns");
  if (!cols.is_array()) throw Error(ErrorKind::parse, "'columns' must be an array", "columns");
  for (const auto& c : cols) {
    if (!c.is_object()) throw Error(ErrorKind::parse, "column entries must be objects", "columns");
    ColumnSpec spec;
    spec.name = required<std::string>(c, "name");
    spec.kind = parse_kind(required<std::string>(c, "kind"), spec.name);
    s.columns.push_back(std::move(spec));
  }
  s.label_column = required<std::string>(j, "label_column");
  for (const auto& v : required<std::vector<std::string>>(j, "normal_values")) {
    s.normal_values.insert(v);
  }
  if (j.contains("drop_columns")) {
    for (const auto& v : required<std::vector<std::string>>(j, "drop_columns")) {
      s.drop_columns.insert(v);
    }
  }
  if (j.contains("has_header")) s.has_header = required<bool>(j, "has_header");
  if (j.contains("category_cap") && !j.at("category_cap").is_null()) {
    const auto& cc = j.at("category_cap");
    CategoryCap cap;
    cap.column = required<std::string>(cc, "column");
    cap.cap = required<std::size_t>(cc, "cap");
    if (cc.contains("normal_cap") && !cc.at("normal_cap").is_null()) {
      cap.normal_cap = required<std::size_t>(cc, "normal_cap");
    }
    s.category_cap = std::move(cap);
  }
  s.validate();
  return s;
}

json to_json(const Schema& s) {
  json cols = json::array();
  for (const auto& c : s.columns) {
    cols.push_back({{"name", c.name}, {"kind", std::string(to_string(c.kind))}});
  }
  json j = {
      {"columns", cols},
      {"label_column", s.label_column},
      {"normal_values", s.normal_values},
      {"drop_columns", s.drop_columns},
      {"has_header", s.has_header},
  };
  if (s.category_cap) {
    json cc = {{"column", s.category_cap->column}, {"cap", s.category_cap->cap}};
    if (s.category_cap->normal_cap) cc["normal_cap"] = *s.category_cap->normal_cap;
    j["category_cap"] = cc;
  }
  return j;
}

Schema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open schema file " + path.string(), path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, "schema " + path.string() + " is not valid JSON: " + e.what(),
                path.string());
  }
  return schema_from_json(j);
}

}  // namespace ig
