#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "ig/common.hpp"

namespace ig::detail {

static_assert(std::endian::native == std::endian::little, "binary containers assume little-endian");

class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream& out) : out_(out) {}

  template <typename T>
  void put(T v) {
    out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
  }
  void bytes(const std::string& s) { out_.write(s.data(), static_cast<std::streamsize>(s.size())); }
  void varint(std::uint64_t v) {
    while (v >= 0x80) {
      out_.put(static_cast<char>((v & 0x7f) | 0x80));
      v >>= 7;
    }
    out_.put(static_cast<char>(v));
  }
  void str(const std::string& s) {
    varint(s.size());
    bytes(s);
  }

 private:
  std::ostream& out_;
};

class BinaryReader {
 public:
  BinaryReader(std::istream& in, std::string what) : in_(in), what_(std::move(what)) {}

  template <typename T>
  T get() {
    T v{};
    in_.read(reinterpret_cast<char*>(&v), sizeof(T));
    check();
    return v;
  }
  std::string bytes(std::size_t n) {
    std::string s(n, '\0');
    in_.read(s.data(), static_cast<std::streamsize>(n));
    check();
    return s;
  }
  std::uint64_t varint() {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      const int c = in_.get();
      if (c == std::char_traits<char>::eof()) fail();
      v |= static_cast<std::uint64_t>(c & 0x7f) << shift;
      if (!(c & 0x80)) return v;
    }
    fail();
  }
  std::string str() { return bytes(varint()); }

 private:
  void check() {
    if (!in_) fail();
  }
  [[noreturn]] void fail() { throw Error(ErrorKind::format, what_ + ": truncated or corrupt file"); }

  std::istream& in_;
  std::string what_;
};

}  // namespace ig::detail
