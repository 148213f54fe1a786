#include "ig/csv.hpp"

#include "ig/common.hpp"

namespace ig {

CsvReader::CsvReader(std::istream& in, char separator) : in_(in), sep_(separator) {}

bool CsvReader::next(std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;       // saw at least one character of this record
  bool quoted = false;    // current field started with a quote
  record_line_ = line_;

  auto finish_record = [&]() {
    fields.push_back(std::move(field));
    field.clear();
  };

  int ch;
  while ((ch = in_.get()) != std::char_traits<char>::eof()) {
    const char c = static_cast<char>(ch);
    if (in_quotes) {
      if (c == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line_;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && field.empty() && !quoted) {
      in_quotes = true;
      quoted = true;
      any = true;
    } else if (c == sep_) {
      fields.push_back(std::move(field));
      field.clear();
      quoted = false;
      any = true;
    } else if (c == '\r') {
      if (in_.peek() == '\n') continue;
      field.push_back(c);
      any = true;
    } else if (c == '\n') {
      ++line_;
      if (!any) {
        // blank line
        record_line_ = line_;
        continue;
      }
      finish_record();
      return true;
    } else {
      field.push_back(c);
      any = true;
    }
  }
  if (in_quotes) {
    throw Error(ErrorKind::parse,
                "unterminated quoted field starting on line " + std::to_string(record_line_));
  }
  if (!any) return false;
  finish_record();
  return true;
}

std::string trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace ig
