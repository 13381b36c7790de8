#pragma once

#include <vector>

#include "bpt/tokenizer.hpp"

namespace bpt {

// Nine coordinate tokens per face (x, y, z of each vertex in face order).
// Ids are coordinate values; BOS = 2^bits, EOS = BOS + 1, PAD = BOS + 2.
TokenSequence encode_vanilla(const QuantizedMesh& mesh);
TokenSequence encode_vanilla(const QuantizedMesh& mesh, const BptConfig& cfg);
QuantizedMesh decode_vanilla(const TokenSequence& seq);

// Face stream as (block, offset) pairs with block tokens merged across
// consecutive vertices of the whole stream. Shares the bpt layout; the
// center-block range is never emitted.
TokenSequence encode_blocked(const QuantizedMesh& mesh, const BptConfig& cfg);
QuantizedMesh decode_blocked(const TokenSequence& seq);

// Flattened face vertices in emission order.
std::vector<QuantizedVertex> vanilla_emission_stream(const TokenSequence& seq);
std::vector<QuantizedVertex> blocked_emission_stream(const TokenSequence& seq);

// Dispatch on kind.
TokenSequence encode_as(const QuantizedMesh& mesh, TokenKind kind, const BptConfig& cfg);
QuantizedMesh decode_any(const TokenSequence& seq);
std::vector<QuantizedVertex> emission_stream(const TokenSequence& seq);

}  // namespace bpt
