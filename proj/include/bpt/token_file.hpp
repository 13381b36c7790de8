#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bpt/tokenizer.hpp"

namespace bpt {

// Little-endian container:
//   "BPT1" | u8 bits | u16 B | u16 O | u8 kind | u64 count | count x u32 ids
inline constexpr char kTokenFileMagic[4] = {'B', 'P', 'T', '1'};
inline constexpr std::size_t kTokenFileHeaderSize = 4 + 1 + 2 + 2 + 1 + 8;

std::vector<std::uint8_t> serialize_tokens(const TokenSequence& seq);

// Throws ConfigError for a bad magic or inconsistent header, and
// MalformedSequence for a short payload or ids outside the vocabulary.
TokenSequence deserialize_tokens(const std::vector<std::uint8_t>& bytes);

void write_token_file(const std::string& path, const TokenSequence& seq);
TokenSequence read_token_file(const std::string& path);

}  // namespace bpt
