#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "bpt/config.hpp"
#include "bpt/mesh.hpp"

namespace bpt {

enum class TokenKind : std::uint8_t { bpt = 0, vanilla = 1, blocked = 2 };

std::string_view to_string(TokenKind kind);
TokenKind parse_token_kind(std::string_view name);

struct TokenSequence {
  std::vector<TokenId> tokens;
  BptConfig config;
  TokenKind kind = TokenKind::bpt;

  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

// A fan around `center`. Consecutive ring entries with the center form the
// patch's faces in their original winding. A closed fan repeats ring.front()
// at the end.
struct Patch {
  std::uint32_t center = 0;
  std::vector<std::uint32_t> ring;
  bool closed = false;

  std::size_t face_count() const { return ring.size() < 2 ? 0 : ring.size() - 1; }
  friend bool operator==(const Patch&, const Patch&) = default;
};

std::vector<Patch> aggregate_patches(const QuantizedMesh& mesh);

TokenSequence encode(const QuantizedMesh& mesh, const BptConfig& cfg);
QuantizedMesh decode(const TokenSequence& seq);

// Length of encode(mesh, cfg).tokens, BOS and EOS included.
std::size_t sequence_length(const QuantizedMesh& mesh, const BptConfig& cfg);

// Vertices in emission order: center then ring (repeats included) per patch.
std::vector<QuantizedVertex> bpt_emission_stream(const TokenSequence& seq);

// Vocabulary size for the sequence's kind and config.
std::uint64_t vocabulary_size(TokenKind kind, const BptConfig& cfg);

// Number of tokens excluding BOS/EOS/PAD.
std::size_t content_token_count(const TokenSequence& seq);

}  // namespace bpt
