#include "ig/bank_io.hpp"

#include <fstream>

#include "binary_io.hpp"

namespace ig {

namespace {

constexpr std::uint8_t kVersion = 1;

void write_side(detail::BinaryWriter& w, const SideProvenance& p) {
  w.varint(p.instances);
  w.varint(p.unique_instances);
  w.varint(p.pairs_examined);
  w.varint(p.patterns_generated);
  w.varint(p.patterns_coherent);
}

SideProvenance read_side(detail::BinaryReader& r) {
  SideProvenance p;
  p.instances = r.varint();
  p.unique_instances = r.varint();
  p.pairs_examined = r.varint();
  p.patterns_generated = r.varint();
  p.patterns_coherent = r.varint();
  return p;
}

void write_patterns(detail::BinaryWriter& w, const std::vector<Pattern>& ps) {
  w.varint(ps.size());
  for (const auto& p : ps) {
    w.varint(p.tokens.size());
    std::uint64_t next = 0;
    for (const auto& t : p.tokens) {
      w.varint(t.column - next);
      w.varint(t.code);
      next = static_cast<std::uint64_t>(t.column) + 1;
    }
    w.varint(p.freq);
  }
}

std::vector<Pattern> read_patterns(detail::BinaryReader& r, std::size_t width) {
  std::vector<Pattern> ps(r.varint());
  for (auto& p : ps) {
    p.tokens.resize(r.varint());
    std::uint64_t next = 0;
    for (auto& t : p.tokens) {
      const std::uint64_t column = next + r.varint();
      if (column >= width) throw Error(ErrorKind::format, "bank token column out of range");
      t.column = static_cast<std::uint32_t>(column);
      t.code = static_cast<Code>(r.varint());
      next = column + 1;
    }
    p.freq = r.varint();
  }
  return ps;
}

}  // namespace

void write_bank(const std::filesystem::path& path, const PatternBank& bank) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string(), path.string());
  detail::BinaryWriter w(out);
  w.bytes(std::string(kBankMagic, 7));
  w.put<std::uint8_t>(kVersion);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(bank.config.include_instances));
  w.varint(bank.config.min_pattern_len);
  w.varint(bank.width);
  w.str(bank.dictionary_fingerprint);
  write_side(w, bank.provenance.normal);
  write_side(w, bank.provenance.anomalous);
  write_patterns(w, bank.cnp);
  write_patterns(w, bank.cap);
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string(), path.string());
}

PatternBank read_bank(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string(), path.string());
  detail::BinaryReader r(in, path.string());
  if (r.bytes(7) != std::string(kBankMagic, 7)) {
    throw Error(ErrorKind::format, path.string() + " is not a pattern bank", path.string());
  }
  if (r.get<std::uint8_t>() != kVersion) {
    throw Error(ErrorKind::format, path.string() + ": unsupported bank version");
  }
  PatternBank bank;
  const auto inc = r.get<std::uint8_t>();
  if (inc > 2) throw Error(ErrorKind::format, path.string() + ": bad include_instances byte");
  bank.config.include_instances = static_cast<IncludeInstances>(inc);
  bank.config.min_pattern_len = r.varint();
  bank.width = r.varint();
  bank.dictionary_fingerprint = r.str();
  bank.provenance.normal = read_side(r);
  bank.provenance.anomalous = read_side(r);
  bank.cnp = read_patterns(r, bank.width);
  bank.cap = read_patterns(r, bank.width);
  return bank;
}

}  // namespace ig
