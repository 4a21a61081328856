// Copyright 2026 The layoutret Authors.
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

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include <zlib.h>

#include "layoutret/error.hpp"

// Minimal PKZIP reader: central directory walk, stored and deflated members,
// CRC verification and the Zip64 extensions. Member-level damage is reported
// as a warning and the member dropped; only a missing or unreadable central
// directory fails the whole archive.
namespace layoutret::zip {

struct Member {
  std::string name;
  std::string bytes;  // decompressed payload
};

struct Archive {
  std::vector<Member> members;
  std::vector<std::string> warnings;
};

namespace detail {

inline constexpr std::uint32_t kLocalSig = 0x04034b50;
inline constexpr std::uint32_t kCentralSig = 0x02014b50;
inline constexpr std::uint32_t kEndSig = 0x06054b50;
inline constexpr std::uint32_t kZip64EndSig = 0x06064b50;
inline constexpr std::uint32_t kZip64LocatorSig = 0x07064b50;
inline constexpr std::uint64_t kMaxMemberSize = std::uint64_t{1} << 30;

class Cursor {
 public:
  explicit Cursor(std::span<const unsigned char> data) : data_(data) {}

  bool in_bounds(std::uint64_t offset, std::uint64_t len) const {
    return offset <= data_.size() && len <= data_.size() - offset;
  }
  std::uint16_t u16(std::uint64_t at) const { return static_cast<std::uint16_t>(data_[at] | data_[at + 1] << 8); }
  std::uint32_t u32(std::uint64_t at) const {
    return static_cast<std::uint32_t>(u16(at)) | static_cast<std::uint32_t>(u16(at + 2)) << 16;
  }
  std::uint64_t u64(std::uint64_t at) const {
    return static_cast<std::uint64_t>(u32(at)) | static_cast<std::uint64_t>(u32(at + 4)) << 32;
  }
  std::string str(std::uint64_t at, std::uint64_t len) const {
    return {reinterpret_cast<const char*>(data_.data() + at), static_cast<std::size_t>(len)};
  }
  std::span<const unsigned char> bytes(std::uint64_t at, std::uint64_t len) const {
    return data_.subspan(at, len);
  }
  std::uint64_t size() const { return data_.size(); }

 private:
  std::span<const unsigned char> data_;
};

struct Entry {
  std::string name;
  std::uint16_t flags = 0;
  std::uint16_t method = 0;
  std::uint32_t crc = 0;
  std::uint64_t compressed_size = 0;
  std::uint64_t uncompressed_size = 0;
  std::uint64_t local_offset = 0;
};

inline bool inflate_raw(std::span<const unsigned char> in, std::string& out) {
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) return false;
  zs.next_in = const_cast<Bytef*>(in.data());
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&zs, Z_FINISH);
  bool ok = rc == Z_STREAM_END && zs.total_out == out.size();
  inflateEnd(&zs);
  return ok;
}

inline void corrupt(const std::string& why) { throw Error(ErrorCode::corrupt_archive, why); }

}  // namespace detail

inline Archive read_archive(std::span<const unsigned char> data) {
  using namespace detail;
  Cursor cur(data);
  if (data.size() < 22 || (cur.u32(0) != kLocalSig && cur.u32(0) != kEndSig))
    throw Error(ErrorCode::not_zip, "missing PK signature");

  // End of central directory: scan back over a possible trailing comment.
  std::uint64_t eocd = 0;
  bool found = false;
  const std::uint64_t lowest = data.size() > 22 + 0xFFFF ? data.size() - 22 - 0xFFFF : 0;
  for (std::uint64_t at = data.size() - 22;; --at) {
    if (cur.u32(at) == kEndSig) {
      eocd = at;
      found = true;
      break;
    }
    if (at == lowest) break;
  }
  if (!found) corrupt("end of central directory not found");

  std::uint64_t count = cur.u16(eocd + 10);
  std::uint64_t cd_size = cur.u32(eocd + 12);
  std::uint64_t cd_offset = cur.u32(eocd + 16);
  if (count == 0xFFFF || cd_size == 0xFFFFFFFF || cd_offset == 0xFFFFFFFF) {
    if (eocd < 20 || cur.u32(eocd - 20) != kZip64LocatorSig) corrupt("zip64 locator missing");
    std::uint64_t rec = cur.u64(eocd - 20 + 8);
    if (!cur.in_bounds(rec, 56) || cur.u32(rec) != kZip64EndSig) corrupt("zip64 end record unreadable");
    count = cur.u64(rec + 32);
    cd_size = cur.u64(rec + 40);
    cd_offset = cur.u64(rec + 48);
  }
  if (!cur.in_bounds(cd_offset, cd_size)) corrupt("central directory out of bounds");

  std::vector<Entry> entries;
  std::uint64_t at = cd_offset;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!cur.in_bounds(at, 46) || cur.u32(at) != kCentralSig) corrupt("bad central directory entry " + std::to_string(i));
    Entry e;
    e.flags = cur.u16(at + 8);
    e.method = cur.u16(at + 10);
    e.crc = cur.u32(at + 16);
    e.compressed_size = cur.u32(at + 20);
    e.uncompressed_size = cur.u32(at + 24);
    const std::uint16_t name_len = cur.u16(at + 28);
    const std::uint16_t extra_len = cur.u16(at + 30);
    const std::uint16_t comment_len = cur.u16(at + 32);
    e.local_offset = cur.u32(at + 42);
    if (!cur.in_bounds(at + 46, std::uint64_t{name_len} + extra_len + comment_len))
      corrupt("central directory entry " + std::to_string(i) + " truncated");
    e.name = cur.str(at + 46, name_len);

    std::uint64_t x = at + 46 + name_len;
    const std::uint64_t x_end = x + extra_len;
    while (x + 4 <= x_end) {
      const std::uint16_t id = cur.u16(x);
      const std::uint16_t len = cur.u16(x + 2);
      std::uint64_t p = x + 4;
      if (id == 0x0001) {
        if (e.uncompressed_size == 0xFFFFFFFF && p + 8 <= x_end) { e.uncompressed_size = cur.u64(p); p += 8; }
        if (e.compressed_size == 0xFFFFFFFF && p + 8 <= x_end) { e.compressed_size = cur.u64(p); p += 8; }
        if (e.local_offset == 0xFFFFFFFF && p + 8 <= x_end) { e.local_offset = cur.u64(p); }
      }
      x += 4 + std::uint64_t{len};
    }
    entries.push_back(std::move(e));
    at += 46 + std::uint64_t{name_len} + extra_len + comment_len;
  }

  Archive archive;
  for (const auto& e : entries) {
    if (!e.name.empty() && e.name.back() == '/') continue;
    auto warn = [&](const std::string& why) { archive.warnings.push_back(e.name + ": " + why); };
    if (e.flags & 0x1) { warn("encrypted member skipped"); continue; }
    if (!cur.in_bounds(e.local_offset, 30) || cur.u32(e.local_offset) != kLocalSig) {
      warn("bad local header");
      continue;
    }
    const std::uint64_t data_at = e.local_offset + 30 + cur.u16(e.local_offset + 26) + cur.u16(e.local_offset + 28);
    if (!cur.in_bounds(data_at, e.compressed_size)) { warn("member data truncated"); continue; }
    if (e.uncompressed_size > kMaxMemberSize) { warn("member too large"); continue; }

    Member m{e.name, std::string(static_cast<std::size_t>(e.uncompressed_size), '\0')};
    auto payload = cur.bytes(data_at, e.compressed_size);
    if (e.method == 0) {
      if (e.compressed_size != e.uncompressed_size) { warn("stored size mismatch"); continue; }
      if (!payload.empty()) std::memcpy(m.bytes.data(), payload.data(), payload.size());
    } else if (e.method == 8) {
      if (!inflate_raw(payload, m.bytes)) { warn("inflate failed"); continue; }
    } else {
      warn("unsupported compression method " + std::to_string(e.method));
      continue;
    }
    const auto crc = crc32(0L, reinterpret_cast<const Bytef*>(m.bytes.data()), static_cast<uInt>(m.bytes.size()));
    if (crc != e.crc) { warn("crc mismatch"); continue; }
    archive.members.push_back(std::move(m));
  }
  return archive;
}

}  // namespace layoutret::zip
