#include "bpt/baselines.hpp"

#include <string>

#include "bpt/error.hpp"

namespace bpt {

namespace {

void require_mesh(const QuantizedMesh& mesh, const BptConfig& cfg) {
  cfg.validate();
  if (mesh.faces.empty()) throw GeometryError("cannot encode an empty mesh");
  if (mesh.bits != cfg.bits) throw ConfigError("mesh bits do not match config bits");
}

QuantizedMesh faces_to_mesh(const std::vector<QuantizedVertex>& stream, int bits) {
  std::vector<Face> faces;
  faces.reserve(stream.size() / 3);
  for (std::uint32_t i = 0; i + 2 < stream.size(); i += 3) faces.push_back({i, i + 1, i + 2});
  try {
    return canonicalize(stream, faces, bits).first;
  } catch (const GeometryError& e) {
    throw MalformedSequence(std::string("decoded geometry is invalid: ") + e.what());
  }
}

// Returns [begin, end) of the content between BOS and EOS; trailing PADs allowed.
std::pair<std::size_t, std::size_t> content_span(const TokenSequence& seq, TokenId bos) {
  const TokenId eos = bos + 1, pad = bos + 2;
  const auto& t = seq.tokens;
  const std::uint64_t total = static_cast<std::uint64_t>(bos) + 3;
  for (TokenId id : t) {
    if (id >= total) throw MalformedSequence("token id " + std::to_string(id) + " outside vocabulary");
  }
  if (t.empty() || t.front() != bos) throw MalformedSequence("sequence must start with BOS");
  std::size_t end = t.size();
  while (end > 1 && t[end - 1] == pad) --end;
  if (end < 2 || t[end - 1] != eos) throw MalformedSequence("truncated sequence: missing EOS");
  for (std::size_t i = 1; i + 1 < end; ++i) {
    if (t[i] >= bos) throw MalformedSequence("unexpected special token at position " + std::to_string(i));
  }
  return {1, end - 1};
}

}  // namespace

TokenSequence encode_vanilla(const QuantizedMesh& mesh) {
  return encode_vanilla(mesh, BptConfig::defaults(mesh.bits));
}

TokenSequence encode_vanilla(const QuantizedMesh& mesh, const BptConfig& cfg) {
  require_mesh(mesh, cfg);
  const TokenId bos = cfg.resolution();
  TokenSequence seq;
  seq.config = cfg;
  seq.kind = TokenKind::vanilla;
  seq.tokens.reserve(9 * mesh.faces.size() + 2);
  seq.tokens.push_back(bos);
  for (const auto& f : mesh.faces) {
    for (std::uint32_t v : {f.a, f.b, f.c}) {
      const auto& q = mesh.vertices[v];
      seq.tokens.push_back(static_cast<TokenId>(q.x));
      seq.tokens.push_back(static_cast<TokenId>(q.y));
      seq.tokens.push_back(static_cast<TokenId>(q.z));
    }
  }
  seq.tokens.push_back(bos + 1);
  return seq;
}

std::vector<QuantizedVertex> vanilla_emission_stream(const TokenSequence& seq) {
  if (seq.kind != TokenKind::vanilla) throw MalformedSequence("not a vanilla token sequence");
  seq.config.validate();
  const auto [begin, end] = content_span(seq, seq.config.resolution());
  if ((end - begin) == 0 || (end - begin) % 9 != 0) {
    throw MalformedSequence("vanilla content length " + std::to_string(end - begin) +
                            " is not a positive multiple of 9");
  }
  std::vector<QuantizedVertex> out;
  out.reserve((end - begin) / 3);
  for (std::size_t i = begin; i < end; i += 3) {
    out.push_back({static_cast<std::int32_t>(seq.tokens[i]), static_cast<std::int32_t>(seq.tokens[i + 1]),
                   static_cast<std::int32_t>(seq.tokens[i + 2])});
  }
  return out;
}

QuantizedMesh decode_vanilla(const TokenSequence& seq) {
  return faces_to_mesh(vanilla_emission_stream(seq), seq.config.bits);
}

TokenSequence encode_blocked(const QuantizedMesh& mesh, const BptConfig& cfg) {
  require_mesh(mesh, cfg);
  const TokenLayout layout = token_layout(cfg);
  TokenSequence seq;
  seq.config = cfg;
  seq.kind = TokenKind::blocked;
  seq.tokens.reserve(6 * mesh.faces.size() + 2);
  seq.tokens.push_back(layout.bos);
  bool have_block = false;
  std::uint32_t block = 0;
  for (const auto& f : mesh.faces) {
    for (std::uint32_t v : {f.a, f.b, f.c}) {
      const BlockOffset bo = block_index(mesh.vertices[v], cfg);
      if (!have_block || bo.block != block) {
        seq.tokens.push_back(static_cast<TokenId>(layout.common_begin + bo.block));
        block = bo.block;
        have_block = true;
      }
      seq.tokens.push_back(bo.offset);
    }
  }
  seq.tokens.push_back(layout.eos);
  return seq;
}

std::vector<QuantizedVertex> blocked_emission_stream(const TokenSequence& seq) {
  if (seq.kind != TokenKind::blocked) throw MalformedSequence("not a blocked token sequence");
  const TokenLayout layout = token_layout(seq.config);
  const auto [begin, end] = content_span(seq, layout.bos);
  std::vector<QuantizedVertex> out;
  bool have_block = false;
  std::uint32_t block = 0;
  for (std::size_t i = begin; i < end; ++i) {
    const TokenId tok = seq.tokens[i];
    if (layout.is_center(tok)) {
      throw MalformedSequence("center-block id is not valid in a blocked sequence");
    }
    if (layout.is_common(tok)) {
      if (i + 1 >= end || !layout.is_offset(seq.tokens[i + 1])) {
        throw MalformedSequence("block token must be followed by an offset token");
      }
      block = static_cast<std::uint32_t>(tok - layout.common_begin);
      have_block = true;
      continue;
    }
    if (!have_block) throw MalformedSequence("offset token before any block context");
    out.push_back(inverse_block_index({block, tok}, seq.config));
  }
  if (out.empty() || out.size() % 3 != 0) {
    throw MalformedSequence("blocked stream holds " + std::to_string(out.size()) +
                            " vertices, not a positive multiple of 3");
  }
  return out;
}

QuantizedMesh decode_blocked(const TokenSequence& seq) {
  return faces_to_mesh(blocked_emission_stream(seq), seq.config.bits);
}

TokenSequence encode_as(const QuantizedMesh& mesh, TokenKind kind, const BptConfig& cfg) {
  switch (kind) {
    case TokenKind::bpt:
      return encode(mesh, cfg);
    case TokenKind::vanilla:
      return encode_vanilla(mesh, cfg);
    case TokenKind::blocked:
      return encode_blocked(mesh, cfg);
  }
  throw ConfigError("unknown token kind");
}

QuantizedMesh decode_any(const TokenSequence& seq) {
  switch (seq.kind) {
    case TokenKind::bpt:
      return decode(seq);
    case TokenKind::vanilla:
      return decode_vanilla(seq);
    case TokenKind::blocked:
      return decode_blocked(seq);
  }
  throw MalformedSequence("unknown token kind");
}

std::vector<QuantizedVertex> emission_stream(const TokenSequence& seq) {
  switch (seq.kind) {
    case TokenKind::bpt:
      return bpt_emission_stream(seq);
    case TokenKind::vanilla:
      return vanilla_emission_stream(seq);
    case TokenKind::blocked:
      return blocked_emission_stream(seq);
  }
  throw MalformedSequence("unknown token kind");
}

}  // namespace bpt
