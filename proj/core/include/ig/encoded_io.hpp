#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "ig/preprocess.hpp"

namespace ig {

/// Encoded dataset container.
///
///   "IGENC1"  6 bytes magic
///   u8        format version (1)
///   u8        binning mode (0 sigma_bins, 1 exact)
///   u32       width (feature columns)
///   u64       original row count
///   width x { u8 kind, f64 mean, f64 std, u64 finite, u64 missing, u32 cardinality }
///   u64       removed count, then u64 origin per removed row
///   u64       instance count, then per instance { u64 origin, u8 label, u32 x width codes }
///
/// All integers little-endian. Dictionaries live in a JSON sidecar next to
/// the container (`<path>.dict.json`); cardinalities in the stats block must
/// agree with it.
inline constexpr char kEncodedMagic[] = "IGENC1";

void write_encoded(const std::filesystem::path& path, const EncodedDataset& ds);
EncodedDataset read_encoded(const std::filesystem::path& path);

std::filesystem::path dictionary_sidecar(const std::filesystem::path& encoded_path);

nlohmann::json dictionaries_to_json(const ColumnStats& stats);

/// True when the file starts with the encoded-dataset magic.
bool is_encoded_file(const std::filesystem::path& path);

/// Stable 16-hex-digit digest of column names, kinds, mode and dictionaries.
/// Stored in pattern banks to tie them to the encoding they were mined under.
std::string stats_fingerprint(const ColumnStats& stats);

}  // namespace ig
