#include "ig/encoded_io.hpp"

#include <cstdio>
#include <fstream>

#include "binary_io.hpp"
#include "ig/hash.hpp"

namespace ig {

using nlohmann::json;

namespace {

constexpr std::uint8_t kVersion = 1;

std::uint64_t hash_string(std::uint64_t h, const std::string& s) {
  h = mix64(h ^ s.size());
  for (unsigned char c : s) h = mix64(h ^ c);
  return h;
}

StatsKind parse_stats_kind(std::uint8_t k) {
  if (k > 2) throw Error(ErrorKind::format, "unknown column kind in encoded container");
  return static_cast<StatsKind>(k);
}

}  // namespace

std::filesystem::path dictionary_sidecar(const std::filesystem::path& encoded_path) {
  auto p = encoded_path;
  p += ".dict.json";
  return p;
}

json dictionaries_to_json(const ColumnStats& stats) {
  json cols = json::array();
  for (const auto& c : stats.columns) {
    json col = {{"name", c.name}, {"kind", std::string(to_string(c.kind))}};
    if (c.kind == StatsKind::numeric) {
      col["mean"] = c.mean;
      col["std"] = c.std;
    }
    col["values"] = c.values;
    cols.push_back(std::move(col));
  }
  return {{"format", "ig-dict/1"},
          {"binning", std::string(to_string(stats.mode))},
          {"fingerprint", stats_fingerprint(stats)},
          {"columns", std::move(cols)}};
}

std::string stats_fingerprint(const ColumnStats& stats) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(stats.mode) + 1);
  for (const auto& c : stats.columns) {
    h = hash_string(h, c.name);
    h = mix64(h ^ static_cast<std::uint64_t>(c.kind));
    h = mix64(h ^ std::bit_cast<std::uint64_t>(c.mean));
    h = mix64(h ^ std::bit_cast<std::uint64_t>(c.std));
    for (const auto& v : c.values) h = hash_string(h, v);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_encoded(const std::filesystem::path& path, const EncodedDataset& ds) {
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot write " + path.string(), path.string());
    detail::BinaryWriter w(out);
    w.bytes(std::string(kEncodedMagic, 6));
    w.put<std::uint8_t>(kVersion);
    w.put<std::uint8_t>(static_cast<std::uint8_t>(ds.stats.mode));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(ds.stats.width()));
    w.put<std::uint64_t>(ds.original_count);
    for (const auto& c : ds.stats.columns) {
      w.put<std::uint8_t>(static_cast<std::uint8_t>(c.kind));
      w.put<double>(c.mean);
      w.put<double>(c.std);
      w.put<std::uint64_t>(c.finite);
      w.put<std::uint64_t>(c.missing);
      w.put<std::uint32_t>(static_cast<std::uint32_t>(c.values.size()));
    }
    w.put<std::uint64_t>(ds.removed.size());
    for (auto r : ds.removed) w.put<std::uint64_t>(r);
    w.put<std::uint64_t>(ds.instances.size());
    for (const auto& inst : ds.instances) {
      w.put<std::uint64_t>(inst.origin);
      w.put<std::uint8_t>(static_cast<std::uint8_t>(inst.label));
      for (auto code : inst.codes) w.put<std::uint32_t>(code);
    }
    if (!out) throw Error(ErrorKind::io, "write failed for " + path.string(), path.string());
  }
  const auto sidecar = dictionary_sidecar(path);
  std::ofstream js(sidecar, std::ios::trunc);
  if (!js) throw Error(ErrorKind::io, "cannot write " + sidecar.string(), sidecar.string());
  js << dictionaries_to_json(ds.stats).dump(1) << '\n';
}

bool is_encoded_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[6] = {};
  in.read(magic, 6);
  return in && std::string(magic, 6) == std::string(kEncodedMagic, 6);
}

EncodedDataset read_encoded(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string(), path.string());
  detail::BinaryReader r(in, path.string());
  if (r.bytes(6) != std::string(kEncodedMagic, 6)) {
    throw Error(ErrorKind::format, path.string() + " is not an encoded dataset", path.string());
  }
  if (r.get<std::uint8_t>() != kVersion) {
    throw Error(ErrorKind::format, path.string() + ": unsupported container version");
  }
  EncodedDataset ds;
  const auto mode = r.get<std::uint8_t>();
  if (mode > 1) throw Error(ErrorKind::format, path.string() + ": unknown binning mode");
  ds.stats.mode = static_cast<BinningMode>(mode);
  const auto width = r.get<std::uint32_t>();
  ds.original_count = r.get<std::uint64_t>();
  std::vector<std::uint32_t> cardinality(width);
  ds.stats.columns.resize(width);
  for (std::uint32_t c = 0; c < width; ++c) {
    auto& col = ds.stats.columns[c];
    col.kind = parse_stats_kind(r.get<std::uint8_t>());
    col.mean = r.get<double>();
    col.std = r.get<double>();
    col.finite = r.get<std::uint64_t>();
    col.missing = r.get<std::uint64_t>();
    cardinality[c] = r.get<std::uint32_t>();
  }
  const auto removed = r.get<std::uint64_t>();
  ds.removed.resize(removed);
  for (auto& o : ds.removed) o = r.get<std::uint64_t>();
  const auto rows = r.get<std::uint64_t>();
  ds.instances.resize(rows);
  for (auto& inst : ds.instances) {
    inst.origin = r.get<std::uint64_t>();
    const auto label = r.get<std::uint8_t>();
    if (label > 1) throw Error(ErrorKind::format, path.string() + ": bad label byte");
    inst.label = static_cast<Label>(label);
    inst.codes.resize(width);
    for (auto& code : inst.codes) code = r.get<std::uint32_t>();
  }

  const auto sidecar = dictionary_sidecar(path);
  std::ifstream js(sidecar);
  if (!js) throw Error(ErrorKind::io, "missing dictionary sidecar " + sidecar.string(), sidecar.string());
  json dict;
  try {
    dict = json::parse(js);
    const auto& cols = dict.at("columns");
    if (cols.size() != width) throw Error(ErrorKind::format, sidecar.string() + ": width mismatch");
    for (std::uint32_t c = 0; c < width; ++c) {
      auto& col = ds.stats.columns[c];
      col.name = cols[c].at("name").get<std::string>();
      for (const auto& v : cols[c].at("values")) col.intern(v.get<std::string>());
      if (col.values.size() != cardinality[c]) {
        throw Error(ErrorKind::format, sidecar.string() + ": dictionary of '" + col.name +
                                           "' disagrees with the container");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::format, sidecar.string() + ": " + e.what(), sidecar.string());
  }
  return ds;
}

}  // namespace ig
