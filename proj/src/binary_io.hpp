// Copyright 2026 The scholarrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "common.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace scholarrec::binio {

// Fixed little-endian encoding so artifacts are byte-identical across hosts.

inline void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

inline void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

inline void put_u8(std::ostream& out, std::uint8_t v) { out.put(static_cast<char>(v)); }

inline void put_i64(std::ostream& out, std::int64_t v) { put_u64(out, static_cast<std::uint64_t>(v)); }

inline void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

inline void put_str(std::ostream& out, std::string_view s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline void read_exact(std::istream& in, char* dst, std::size_t n) {
  in.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw Error(ErrorCode::Format, "unexpected end of file");
  }
}

inline std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  read_exact(in, reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

inline std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  read_exact(in, reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

inline std::uint8_t get_u8(std::istream& in) {
  char c;
  read_exact(in, &c, 1);
  return static_cast<std::uint8_t>(c);
}

inline std::int64_t get_i64(std::istream& in) { return static_cast<std::int64_t>(get_u64(in)); }

inline double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

inline std::string get_str(std::istream& in, std::size_t max_len = 1u << 24) {
  const std::uint32_t n = get_u32(in);
  if (n > max_len) throw Error(ErrorCode::Format, "string length out of range");
  std::string s(n, '\0');
  read_exact(in, s.data(), n);
  return s;
}

inline void expect_magic(std::istream& in, std::string_view magic) {
  std::string got(magic.size(), '\0');
  read_exact(in, got.data(), got.size());
  if (got != magic) throw Error(ErrorCode::Format, "bad magic header");
}

}  // namespace scholarrec::binio
