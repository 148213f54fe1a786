#include "ig/ingest.hpp"

#include <fstream>
#include <map>
#include <unordered_map>

#include "ig/csv.hpp"

namespace ig {

Label binarize_label(std::string_view raw_label, const Schema& schema, std::size_t* warnings) {
  const std::string key = trim(raw_label);
  if (key.empty() && warnings) ++*warnings;
  return schema.normal_values.count(key) ? Label::normal : Label::anomalous;
}

namespace {

// Positions of each schema column within a physical record.
std::vector<std::size_t> resolve_layout(const Schema& schema, const std::vector<std::string>* header,
                                        const std::filesystem::path& path) {
  std::vector<std::size_t> pos(schema.columns.size());
  if (!header) {
    for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
    return pos;
  }
  std::unordered_map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < header->size(); ++i) by_name.emplace(trim((*header)[i]), i);
  for (std::size_t i = 0; i < schema.columns.size(); ++i) {
    auto it = by_name.find(schema.columns[i].name);
    if (it == by_name.end()) {
      throw Error(ErrorKind::invalid_column,
                  path.string() + ": header has no column '" + schema.columns[i].name + "'",
                  schema.columns[i].name);
    }
    pos[i] = it->second;
  }
  return pos;
}

}  // namespace

RawDataset load_dataset(const std::filesystem::path& path, const Schema& schema,
                        std::optional<std::size_t> limit) {
  schema.validate();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open dataset " + path.string(), path.string());

  RawDataset ds;
  ds.schema = schema;
  ds.features = schema.feature_columns();
  if (limit && *limit == 0) return ds;

  CsvReader reader(in);
  std::vector<std::string> record;
  std::vector<std::string> header;
  std::size_t expected = schema.columns.size();
  if (schema.has_header) {
    if (!reader.next(header)) return ds;
    expected = header.size();
  }
  const auto layout = resolve_layout(schema, schema.has_header ? &header : nullptr, path);

  std::vector<std::size_t> feature_pos;
  for (std::size_t i = 0; i < schema.columns.size(); ++i) {
    const auto& name = schema.columns[i].name;
    if (name == schema.label_column || schema.drop_columns.count(name)) continue;
    feature_pos.push_back(layout[i]);
  }
  const std::size_t label_pos = layout[schema.label_index()];
  std::optional<std::size_t> cap_pos;
  if (schema.category_cap) {
    for (std::size_t i = 0; i < schema.columns.size(); ++i) {
      if (schema.columns[i].name == schema.category_cap->column) cap_pos = layout[i];
    }
  }
  std::map<std::string, std::size_t> per_category;
  std::size_t normals_taken = 0;

  while (reader.next(record)) {
    if (record.size() != expected) {
      throw Error(ErrorKind::arity,
                  path.string() + ":" + std::to_string(reader.line()) + ": expected " +
                      std::to_string(expected) + " cells, found " + std::to_string(record.size()),
                  path.string());
    }
    std::size_t warnings = 0;
    const Label label = binarize_label(record[label_pos], schema, &warnings);
    if (cap_pos) {
      if (label == Label::normal) {
        if (schema.category_cap->normal_cap && normals_taken >= *schema.category_cap->normal_cap) {
          continue;
        }
        ++normals_taken;
      } else {
        auto& taken = per_category[trim(record[*cap_pos])];
        if (taken >= schema.category_cap->cap) continue;
        ++taken;
      }
    }
    std::vector<std::string> cells;
    cells.reserve(feature_pos.size());
    for (auto p : feature_pos) cells.push_back(std::move(record[p]));
    ds.rows.push_back(std::move(cells));
    ds.labels.push_back(label);
    ds.label_warnings += warnings;
    if (limit && ds.rows.size() >= *limit) break;
  }
  return ds;
}

RawDataset concat(RawDataset head, const RawDataset& tail) {
  if (!(head.schema == tail.schema)) {
    throw Error(ErrorKind::invalid_config, "cannot concatenate datasets with different schemas");
  }
  head.rows.insert(head.rows.end(), tail.rows.begin(), tail.rows.end());
  head.labels.insert(head.labels.end(), tail.labels.begin(), tail.labels.end());
  head.label_warnings += tail.label_warnings;
  return head;
}

TokenizedRows parse_tokenized(std::istream& in, const std::set<std::string>& normal_values) {
  TokenizedRows out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorKind::parse,
                  "line " + std::to_string(lineno) + ": expected TAB before the label");
    }
    std::vector<std::string> tokens;
    std::string_view body(line.data(), tab);
    std::size_t start = 0;
    while (start <= body.size()) {
      auto comma = body.find(',', start);
      if (comma == std::string_view::npos) comma = body.size();
      auto tok = trim(body.substr(start, comma - start));
      if (!tok.empty()) tokens.push_back(std::move(tok));
      start = comma + 1;
    }
    auto raw_label = trim(std::string_view(line).substr(tab + 1));
    out.labels.push_back(normal_values.count(raw_label) ? Label::normal : Label::anomalous);
    out.raw_labels.push_back(std::move(raw_label));
    out.tokens.push_back(std::move(tokens));
  }
  return out;
}

TokenizedRows load_tokenized(const std::filesystem::path& path,
                             const std::set<std::string>& normal_values) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string(), path.string());
  return parse_tokenized(in, normal_values);
}

}  // namespace ig
