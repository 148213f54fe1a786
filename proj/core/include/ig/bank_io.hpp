#pragma once

#include <filesystem>

#include "ig/mining.hpp"

namespace ig {

/// Pattern bank container.
///
///   "IGBANK1"  7 bytes magic, then u8 format version (1)
///   config     u8 include_instances, varint min_pattern_len
///   varint     width, then string dictionary fingerprint (varint length + bytes)
///   provenance 10 varints: normal side then anomalous side, each
///              {instances, unique, pairs, generated, coherent}
///   cnp, cap   varint count, then per pattern: varint length, tokens as
///              (varint column delta, varint code) with delta = column - previous
///              column - 1 (first column stored as is), then varint freq
inline constexpr char kBankMagic[] = "IGBANK1";

void write_bank(const std::filesystem::path& path, const PatternBank& bank);
PatternBank read_bank(const std::filesystem::path& path);

}  // namespace ig
