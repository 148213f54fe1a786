#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

namespace ig {

/// Streaming RFC-4180 reader: quoted fields, doubled-quote escapes, embedded
/// separators and newlines inside quotes, LF or CRLF record ends.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in, char separator = ',');

  /// Reads the next record into `fields`. Returns false at end of input.
  /// Blank lines are skipped. Throws ig::Error(parse) on an unterminated quote.
  bool next(std::vector<std::string>& fields);

  /// 1-based physical line on which the last returned record started.
  std::size_t line() const noexcept { return record_line_; }

 private:
  std::istream& in_;
  char sep_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

std::string trim(std::string_view s);

}  // namespace ig
