#include "ig/common.hpp"

namespace ig {

std::string_view to_string(Label label) {
  return label == Label::normal ? "normal" : "anomalous";
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::duplicate_column: return "duplicate_column";
    case ErrorKind::missing_label_column: return "missing_label_column";
    case ErrorKind::label_dropped: return "label_dropped";
    case ErrorKind::no_feature_columns: return "no_feature_columns";
    case ErrorKind::invalid_column: return "invalid_column";
    case ErrorKind::arity: return "arity";
    case ErrorKind::io: return "io";
    case ErrorKind::degenerate_split: return "degenerate_split";
    case ErrorKind::invalid_config: return "invalid_config";
    case ErrorKind::unknown_token: return "unknown_token";
    case ErrorKind::format: return "format";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, std::string message, std::string field)
    : std::runtime_error(std::move(message)), kind_(kind), field_(std::move(field)) {}

}  // namespace ig
