#include "bpt/token_file.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>

#include "bpt/error.hpp"

namespace bpt {

namespace {

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(value) >> (8 * i)));
  }
}

template <typename T>
T get_le(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return static_cast<T>(v);
}

}  // namespace

std::vector<std::uint8_t> serialize_tokens(const TokenSequence& seq) {
  std::vector<std::uint8_t> out;
  out.reserve(kTokenFileHeaderSize + 4 * seq.tokens.size());
  out.insert(out.end(), std::begin(kTokenFileMagic), std::end(kTokenFileMagic));
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(seq.config.bits));
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(seq.config.blocks));
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(seq.config.offsets));
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(seq.kind));
  put_le<std::uint64_t>(out, seq.tokens.size());
  for (TokenId t : seq.tokens) put_le<std::uint32_t>(out, t);
  return out;
}

TokenSequence deserialize_tokens(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kTokenFileMagic, 4) != 0) {
    throw ConfigError("bad magic: not a BPT1 token file");
  }
  if (bytes.size() < kTokenFileHeaderSize) throw ConfigError("token file header is truncated");
  const std::uint8_t* p = bytes.data() + 4;
  TokenSequence seq;
  seq.config.bits = get_le<std::uint8_t>(p);
  seq.config.blocks = get_le<std::uint16_t>(p + 1);
  seq.config.offsets = get_le<std::uint16_t>(p + 3);
  const auto kind = get_le<std::uint8_t>(p + 5);
  if (kind > 2) throw ConfigError("unknown token kind " + std::to_string(kind));
  seq.kind = static_cast<TokenKind>(kind);
  seq.config.validate();
  const auto count = get_le<std::uint64_t>(p + 6);

  const std::size_t payload = bytes.size() - kTokenFileHeaderSize;
  if (count > payload / 4 || payload != count * 4) {
    throw MalformedSequence("token payload holds " + std::to_string(payload) +
                            " bytes, header declares " + std::to_string(count) + " tokens");
  }
  const std::uint64_t vocab = vocabulary_size(seq.kind, seq.config);
  seq.tokens.resize(count);
  const std::uint8_t* q = bytes.data() + kTokenFileHeaderSize;
  for (std::size_t i = 0; i < count; ++i) {
    seq.tokens[i] = get_le<std::uint32_t>(q + 4 * i);
    if (seq.tokens[i] >= vocab) {
      throw MalformedSequence("token id " + std::to_string(seq.tokens[i]) + " at index " +
                              std::to_string(i) + " outside vocabulary");
    }
  }
  return seq;
}

void write_token_file(const std::string& path, const TokenSequence& seq) {
  const auto bytes = serialize_tokens(seq);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

TokenSequence read_token_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_tokens(bytes);
}

}  // namespace bpt
