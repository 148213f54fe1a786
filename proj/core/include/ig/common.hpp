#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ig {

/// Binary class of an instance. Every attack type collapses to `anomalous`.
enum class Label : std::uint8_t { normal = 0, anomalous = 1 };

std::string_view to_string(Label label);

using Code = std::uint32_t;

/// Marks a column that does not occur in an instance at all. Only produced by
/// the pre-tokenized input format, where instances have variable token sets.
/// Never part of a token: intersections and subset tests skip it.
inline constexpr Code kAbsent = std::numeric_limits<Code>::max();

/// A column-qualified category code, the atom of every pattern.
struct Token {
  std::uint32_t column = 0;
  Code code = 0;

  friend auto operator<=>(const Token&, const Token&) = default;
};

enum class ErrorKind {
  parse,
  duplicate_column,
  missing_label_column,
  label_dropped,
  no_feature_columns,
  invalid_column,
  arity,
  io,
  degenerate_split,
  invalid_config,
  unknown_token,
  format,
};

std::string_view to_string(ErrorKind kind);

/// Error raised by every ig operation. `field()` names the offending input
/// (a schema key, a column, a file path) when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string field = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

}  // namespace ig
