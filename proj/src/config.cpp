#include "bpt/config.hpp"

#include "bpt/error.hpp"

namespace bpt {

BptConfig BptConfig::from_blocks(int bits, std::uint32_t blocks) {
  if (bits < kMinBits || bits > kMaxBits) {
    throw ConfigError("bits must be in [" + std::to_string(kMinBits) + ", " +
                      std::to_string(kMaxBits) + "]");
  }
  const std::uint32_t res = 1u << bits;
  if (blocks == 0 || res % blocks != 0) {
    throw ConfigError("blocks=" + std::to_string(blocks) + " does not divide resolution " +
                      std::to_string(res));
  }
  return BptConfig{blocks, res / blocks, bits};
}

BptConfig BptConfig::defaults(int bits) {
  return from_blocks(bits, bits >= 3 ? 8u : (1u << bits));
}

void BptConfig::validate() const {
  if (bits < kMinBits || bits > kMaxBits) throw ConfigError("bits out of range");
  if (blocks == 0 || offsets == 0) throw ConfigError("blocks and offsets must be positive");
  if (static_cast<std::uint64_t>(blocks) * offsets != (1ull << bits)) {
    throw ConfigError("blocks * offsets must equal 2^bits (" + std::to_string(blocks) + " * " +
                      std::to_string(offsets) + " != " + std::to_string(1u << bits) + ")");
  }
}

TokenLayout token_layout(const BptConfig& cfg) {
  cfg.validate();
  const std::uint64_t o3 = static_cast<std::uint64_t>(cfg.offsets) * cfg.offsets * cfg.offsets;
  const std::uint64_t b3 = static_cast<std::uint64_t>(cfg.blocks) * cfg.blocks * cfg.blocks;
  TokenLayout l;
  l.offset_begin = 0;
  l.offset_end = o3;
  l.common_begin = o3;
  l.common_end = o3 + b3;
  l.center_begin = o3 + b3;
  l.center_end = o3 + 2 * b3;
  l.bos = static_cast<TokenId>(l.center_end);
  l.eos = l.bos + 1;
  l.pad = l.bos + 2;
  l.total = l.center_end + 3;
  return l;
}

}  // namespace bpt
