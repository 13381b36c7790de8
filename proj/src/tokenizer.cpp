#include "bpt/tokenizer.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "bpt/error.hpp"

namespace bpt {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::bpt:
      return "bpt";
    case TokenKind::vanilla:
      return "vanilla";
    case TokenKind::blocked:
      return "blocked";
  }
  return "unknown";
}

TokenKind parse_token_kind(std::string_view name) {
  if (name == "bpt") return TokenKind::bpt;
  if (name == "vanilla") return TokenKind::vanilla;
  if (name == "blocked") return TokenKind::blocked;
  throw ConfigError("unknown token kind '" + std::string(name) + "'");
}

std::uint64_t vocabulary_size(TokenKind kind, const BptConfig& cfg) {
  if (kind == TokenKind::vanilla) return static_cast<std::uint64_t>(cfg.resolution()) + 3;
  return token_layout(cfg).total;
}

std::size_t content_token_count(const TokenSequence& seq) {
  const TokenId bos = static_cast<TokenId>(vocabulary_size(seq.kind, seq.config) - 3);
  return static_cast<std::size_t>(std::count_if(seq.tokens.begin(), seq.tokens.end(),
                                                [&](TokenId t) { return t < bos; }));
}

namespace {

// Face rotated so that `center` comes first: (center, u, w).
struct FanEdge {
  std::uint32_t face;
  std::uint32_t u;
  std::uint32_t w;
};

FanEdge fan_edge(const Face& f, std::uint32_t face_id, std::uint32_t center) {
  if (f.a == center) return {face_id, f.b, f.c};
  if (f.b == center) return {face_id, f.c, f.a};
  return {face_id, f.a, f.b};
}

class PatchBuilder {
 public:
  explicit PatchBuilder(const QuantizedMesh& mesh)
      : mesh_(mesh),
        incident_(mesh.vertices.size()),
        unvisited_(mesh.vertices.size(), 0),
        visited_(mesh.faces.size(), 0) {
    for (std::uint32_t f = 0; f < mesh.faces.size(); ++f) {
      for (std::uint32_t v : {mesh.faces[f].a, mesh.faces[f].b, mesh.faces[f].c}) {
        incident_[v].push_back(f);
        ++unvisited_[v];
      }
    }
  }

  std::vector<Patch> run() {
    std::vector<Patch> patches;
    for (std::uint32_t f = 0; f < mesh_.faces.size(); ++f) {
      if (visited_[f]) continue;
      const Face& seed = mesh_.faces[f];
      std::uint32_t center = seed.a;
      for (std::uint32_t v : {seed.b, seed.c}) {
        if (unvisited_[v] > unvisited_[center] ||
            (unvisited_[v] == unvisited_[center] && v < center)) {
          center = v;
        }
      }
      // Each edge-connected fan around the center becomes one patch.
      for (std::uint32_t s = f; s != kNone; s = next_unvisited(center)) {
        patches.push_back(walk_fan(center, s));
      }
    }
    return patches;
  }

 private:
  static constexpr std::uint32_t kNone = ~0u;

  std::uint32_t next_unvisited(std::uint32_t center) const {
    for (std::uint32_t g : incident_[center]) {
      if (!visited_[g]) return g;
    }
    return kNone;
  }

  void take(std::uint32_t face) {
    visited_[face] = 1;
    const Face& f = mesh_.faces[face];
    --unvisited_[f.a];
    --unvisited_[f.b];
    --unvisited_[f.c];
  }

  Patch walk_fan(std::uint32_t center, std::uint32_t seed) {
    std::unordered_map<std::uint32_t, std::vector<FanEdge>> by_u, by_w;
    for (std::uint32_t g : incident_[center]) {
      if (visited_[g]) continue;
      const FanEdge e = fan_edge(mesh_.faces[g], g, center);
      by_u[e.u].push_back(e);
      by_w[e.w].push_back(e);
    }
    // Lists are in canonical face order, so the first untaken entry is the earliest.
    auto first_untaken = [&](const auto& map, std::uint32_t key) -> const FanEdge* {
      const auto it = map.find(key);
      if (it == map.end()) return nullptr;
      for (const auto& e : it->second) {
        if (!visited_[e.face]) return &e;
      }
      return nullptr;
    };

    const FanEdge start = fan_edge(mesh_.faces[seed], seed, center);
    take(seed);

    // Walk against the winding until the fan closes or hits a boundary.
    std::vector<FanEdge> back;
    bool closed = false;
    FanEdge cur = start;
    for (;;) {
      if (!back.empty() && start.w == cur.u) {
        closed = true;
        break;
      }
      const FanEdge* prev = first_untaken(by_w, cur.u);
      if (!prev) break;
      cur = *prev;
      take(cur.face);
      back.push_back(cur);
    }

    std::vector<FanEdge> chain(back.rbegin(), back.rend());
    chain.push_back(start);
    if (closed) {
      const auto earliest = std::min_element(
          chain.begin(), chain.end(),
          [](const FanEdge& l, const FanEdge& r) { return l.face < r.face; });
      std::rotate(chain.begin(), earliest, chain.end());
    } else {
      cur = start;
      while (const FanEdge* next = first_untaken(by_u, cur.w)) {
        cur = *next;
        take(cur.face);
        chain.push_back(cur);
      }
    }

    Patch p;
    p.center = center;
    p.closed = closed;
    p.ring.reserve(chain.size() + 1);
    p.ring.push_back(chain.front().u);
    for (const auto& e : chain) p.ring.push_back(e.w);
    return p;
  }

  const QuantizedMesh& mesh_;
  std::vector<std::vector<std::uint32_t>> incident_;
  std::vector<std::uint32_t> unvisited_;
  std::vector<char> visited_;
};

void require_consistent(const QuantizedMesh& mesh, const BptConfig& cfg) {
  cfg.validate();
  if (mesh.faces.empty()) throw GeometryError("cannot encode an empty mesh");
  if (mesh.bits != cfg.bits) {
    throw ConfigError("mesh bits " + std::to_string(mesh.bits) + " do not match config bits " +
                      std::to_string(cfg.bits));
  }
}

struct DecodedPatch {
  QuantizedVertex center;
  std::vector<QuantizedVertex> ring;
};

void check_vocabulary(const TokenSequence& seq) {
  const std::uint64_t total = vocabulary_size(seq.kind, seq.config);
  for (TokenId t : seq.tokens) {
    if (t >= total) {
      throw MalformedSequence("token id " + std::to_string(t) + " outside vocabulary of size " +
                              std::to_string(total));
    }
  }
}

std::vector<DecodedPatch> parse_patches(const TokenSequence& seq) {
  if (seq.kind != TokenKind::bpt) throw MalformedSequence("not a bpt token sequence");
  seq.config.validate();
  check_vocabulary(seq);
  const TokenLayout layout = token_layout(seq.config);
  const auto& t = seq.tokens;
  if (t.empty() || t.front() != layout.bos) throw MalformedSequence("sequence must start with BOS");

  std::vector<DecodedPatch> patches;
  auto close_patch = [&] {
    if (!patches.empty() && patches.back().ring.size() < 2) {
      throw MalformedSequence("patch ring has fewer than 2 vertices");
    }
  };
  auto read_offset = [&](std::size_t i) -> std::uint32_t {
    if (i >= t.size() || !layout.is_offset(t[i])) {
      throw MalformedSequence("block token must be followed by an offset token");
    }
    return t[i];
  };

  std::uint32_t block = 0;
  std::size_t i = 1;
  for (; i < t.size(); ++i) {
    const TokenId tok = t[i];
    if (tok == layout.eos) break;
    if (tok == layout.bos || tok == layout.pad) {
      throw MalformedSequence("unexpected special token at position " + std::to_string(i));
    }
    if (layout.is_center(tok)) {
      close_patch();
      block = static_cast<std::uint32_t>(tok - layout.center_begin);
      const std::uint32_t off = read_offset(++i);
      patches.push_back({inverse_block_index({block, off}, seq.config), {}});
    } else if (patches.empty()) {
      throw MalformedSequence("first content token must be a center-block id");
    } else if (layout.is_common(tok)) {
      block = static_cast<std::uint32_t>(tok - layout.common_begin);
      const std::uint32_t off = read_offset(++i);
      patches.back().ring.push_back(inverse_block_index({block, off}, seq.config));
    } else {
      patches.back().ring.push_back(inverse_block_index({block, tok}, seq.config));
    }
  }
  if (i >= t.size()) throw MalformedSequence("truncated sequence: missing EOS");
  for (++i; i < t.size(); ++i) {
    if (t[i] != layout.pad) throw MalformedSequence("only PAD may follow EOS");
  }
  if (patches.empty()) throw MalformedSequence("sequence contains no patches");
  close_patch();
  return patches;
}

}  // namespace

std::vector<Patch> aggregate_patches(const QuantizedMesh& mesh) { return PatchBuilder(mesh).run(); }

TokenSequence encode(const QuantizedMesh& mesh, const BptConfig& cfg) {
  require_consistent(mesh, cfg);
  const TokenLayout layout = token_layout(cfg);
  const auto patches = aggregate_patches(mesh);

  TokenSequence seq;
  seq.config = cfg;
  seq.kind = TokenKind::bpt;
  seq.tokens.reserve(2 + mesh.faces.size() * 3);
  seq.tokens.push_back(layout.bos);
  for (const auto& p : patches) {
    const BlockOffset c = block_index(mesh.vertices[p.center], cfg);
    seq.tokens.push_back(static_cast<TokenId>(layout.center_begin + c.block));
    seq.tokens.push_back(c.offset);
    std::uint32_t block = c.block;
    for (std::uint32_t v : p.ring) {
      const BlockOffset bo = block_index(mesh.vertices[v], cfg);
      if (bo.block != block) {
        seq.tokens.push_back(static_cast<TokenId>(layout.common_begin + bo.block));
        block = bo.block;
      }
      seq.tokens.push_back(bo.offset);
    }
  }
  seq.tokens.push_back(layout.eos);
  return seq;
}

QuantizedMesh decode(const TokenSequence& seq) {
  const auto patches = parse_patches(seq);
  std::vector<QuantizedVertex> verts;
  std::vector<Face> faces;
  for (const auto& p : patches) {
    const auto c = static_cast<std::uint32_t>(verts.size());
    verts.push_back(p.center);
    for (std::size_t k = 0; k < p.ring.size(); ++k) {
      verts.push_back(p.ring[k]);
      if (k > 0) faces.push_back({c, c + static_cast<std::uint32_t>(k), c + static_cast<std::uint32_t>(k + 1)});
    }
  }
  try {
    return canonicalize(verts, faces, seq.config.bits).first;
  } catch (const GeometryError& e) {
    throw MalformedSequence(std::string("decoded geometry is invalid: ") + e.what());
  }
}

std::size_t sequence_length(const QuantizedMesh& mesh, const BptConfig& cfg) {
  return encode(mesh, cfg).tokens.size();
}

std::vector<QuantizedVertex> bpt_emission_stream(const TokenSequence& seq) {
  std::vector<QuantizedVertex> out;
  for (const auto& p : parse_patches(seq)) {
    out.push_back(p.center);
    out.insert(out.end(), p.ring.begin(), p.ring.end());
  }
  return out;
}

}  // namespace bpt
