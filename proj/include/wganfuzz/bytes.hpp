#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace wganfuzz {

using ByteBuf = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;
using Rng = std::mt19937_64;

// FNV-1a, 64 bit. Used for content dedup and path hashing.
uint64_t fnv1a64(const void* data, size_t len, uint64_t h = 0xcbf29ce484222325ull);

inline uint64_t content_hash(ByteView data) { return fnv1a64(data.data(), data.size()); }

std::string to_hex(ByteView data);

// Little-endian readers; callers must check bounds.
inline uint16_t read_u16le(ByteView b, size_t off) {
  return static_cast<uint16_t>(b[off] | (b[off + 1] << 8));
}
inline uint32_t read_u32le(ByteView b, size_t off) {
  return static_cast<uint32_t>(b[off]) | (static_cast<uint32_t>(b[off + 1]) << 8) |
         (static_cast<uint32_t>(b[off + 2]) << 16) | (static_cast<uint32_t>(b[off + 3]) << 24);
}
inline void put_u16le(ByteBuf& b, uint16_t v) {
  b.push_back(static_cast<uint8_t>(v & 0xff));
  b.push_back(static_cast<uint8_t>(v >> 8));
}
inline void put_u32le(ByteBuf& b, uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xff));
}

}  // namespace wganfuzz
