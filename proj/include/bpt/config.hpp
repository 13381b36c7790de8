#pragma once

#include <cstdint>
#include <string>

#include "bpt/mesh.hpp"

namespace bpt {

using TokenId = std::uint32_t;

// Blocks per axis (B), offsets per axis (O) and grid depth; B * O == 2^bits.
struct BptConfig {
  std::uint32_t blocks = 8;
  std::uint32_t offsets = 16;
  int bits = 7;

  // Derives O = 2^bits / B; throws ConfigError when B does not divide the grid.
  static BptConfig from_blocks(int bits, std::uint32_t blocks);
  // B = 8 (or 2^bits when the grid is coarser than that).
  static BptConfig defaults(int bits);

  void validate() const;
  std::uint32_t resolution() const { return 1u << bits; }

  friend bool operator==(const BptConfig&, const BptConfig&) = default;
};

// Concrete id ranges:
//   offsets       [0, O^3)
//   common block  [O^3, O^3 + B^3)
//   center block  [O^3 + B^3, O^3 + 2 B^3)
//   BOS, EOS, PAD follow.
struct TokenLayout {
  std::uint64_t offset_begin = 0, offset_end = 0;
  std::uint64_t common_begin = 0, common_end = 0;
  std::uint64_t center_begin = 0, center_end = 0;
  TokenId bos = 0, eos = 0, pad = 0;
  std::uint64_t total = 0;

  bool is_offset(TokenId t) const { return t < offset_end; }
  bool is_common(TokenId t) const { return t >= common_begin && t < common_end; }
  bool is_center(TokenId t) const { return t >= center_begin && t < center_end; }
};

TokenLayout token_layout(const BptConfig& cfg);

struct BlockOffset {
  std::uint32_t block = 0;
  std::uint32_t offset = 0;
  friend bool operator==(const BlockOffset&, const BlockOffset&) = default;
};

inline BlockOffset block_index(const QuantizedVertex& v, const BptConfig& cfg) {
  const std::uint32_t O = cfg.offsets, B = cfg.blocks;
  const auto x = static_cast<std::uint32_t>(v.x), y = static_cast<std::uint32_t>(v.y),
             z = static_cast<std::uint32_t>(v.z);
  return {(x / O) * B * B + (y / O) * B + z / O, (x % O) * O * O + (y % O) * O + z % O};
}

inline QuantizedVertex inverse_block_index(BlockOffset bo, const BptConfig& cfg) {
  const std::uint32_t O = cfg.offsets, B = cfg.blocks;
  const std::uint32_t bx = bo.block / (B * B), by = (bo.block / B) % B, bz = bo.block % B;
  const std::uint32_t ox = bo.offset / (O * O), oy = (bo.offset / O) % O, oz = bo.offset % O;
  return {static_cast<std::int32_t>(bx * O + ox), static_cast<std::int32_t>(by * O + oy),
          static_cast<std::int32_t>(bz * O + oz)};
}

// Single scalar index x r^2 + y r + z over the full grid.
inline std::uint64_t naive_index(const QuantizedVertex& v, int bits) {
  const std::uint64_t r = 1ull << bits;
  return static_cast<std::uint64_t>(v.x) * r * r + static_cast<std::uint64_t>(v.y) * r +
         static_cast<std::uint64_t>(v.z);
}

}  // namespace bpt
