#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "agsgr/errors.hpp"

// Little-endian binary primitives for the checkpoint / dataset file formats.

namespace agsgr::io {

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; big-endian hosts are unsupported");

template <typename T>
void write_pod(std::ostream& os, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is, const char* what) {
  static_assert(std::is_trivially_copyable_v<T>);
  T v;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T)))
    throw FormatError(std::string("truncated file while reading ") + what);
  return v;
}

inline void write_magic(std::ostream& os, std::string_view magic) {
  os.write(magic.data(), static_cast<std::streamsize>(magic.size()));
}

inline void expect_magic(std::istream& is, std::string_view magic, const char* what) {
  std::string buf(magic.size(), '\0');
  if (!is.read(buf.data(), static_cast<std::streamsize>(buf.size())) || buf != magic)
    throw FormatError(std::string(what) + ": bad magic, not a recognized file");
}

}  // namespace agsgr::io
