#include "commands.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>

#include "bpt/baselines.hpp"
#include "bpt/corpus.hpp"
#include "bpt/error.hpp"
#include "bpt/metrics.hpp"
#include "bpt/token_file.hpp"
#include "json.hpp"

namespace bpt::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Runs `body`, mapping library errors onto exit codes.
template <typename Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const MalformedSequence& e) {
    err << "error: malformed token stream: " << e.what() << '\n';
    return kMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

using CoordFace = std::array<std::int32_t, 9>;

std::set<CoordFace> coordinate_faces(const QuantizedMesh& m) {
  std::set<CoordFace> out;
  for (const auto& f : m.faces) {
    const auto& a = m.vertices[f.a];
    const auto& b = m.vertices[f.b];
    const auto& c = m.vertices[f.c];
    out.insert({a.x, a.y, a.z, b.x, b.y, b.z, c.x, c.y, c.z});
  }
  return out;
}

std::size_t count_missing(const std::set<CoordFace>& from, const std::set<CoordFace>& in) {
  return static_cast<std::size_t>(
      std::count_if(from.begin(), from.end(), [&](const CoordFace& f) { return !in.count(f); }));
}

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<std::string> paths;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      const auto found = discover_meshes(in);
      paths.insert(paths.end(), found.begin(), found.end());
    } else {
      paths.push_back(in);
    }
  }
  return paths;
}

}  // namespace

int cmd_encode(const EncodeOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BptConfig cfg = BptConfig::from_blocks(opts.bits, opts.blocks);
    const TokenKind kind = parse_token_kind(opts.kind);
    const QuantizedMesh mesh = prepare_mesh(load_obj_file(opts.input), cfg.bits);
    const TokenSequence seq = encode_as(mesh, kind, cfg);
    if (!opts.output.empty()) write_token_file(opts.output, seq);
    const CompressionReport r = compression_ratio(seq, mesh);
    out << json{{"kind", to_string(kind)},
                {"tokens", seq.tokens.size()},
                {"content_tokens", r.tokens},
                {"faces", r.faces},
                {"vertices", mesh.vertices.size()},
                {"ratio", r.ratio}}
               .dump()
        << '\n';
    return int{kSuccess};
  });
}

int cmd_decode(const DecodeOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const TokenSequence seq = read_token_file(opts.input);
    const QuantizedMesh mesh = decode_any(seq);
    const RawMesh raw = dequantize(mesh);
    if (opts.output.empty()) {
      write_obj(out, raw);
    } else {
      std::ofstream f(opts.output, std::ios::binary | std::ios::trunc);
      if (!f) throw ConfigError("cannot open '" + opts.output + "' for writing");
      write_obj(f, raw);
      out << json{{"kind", to_string(seq.kind)},
                  {"faces", mesh.faces.size()},
                  {"vertices", mesh.vertices.size()}}
                 .dump()
          << '\n';
    }
    return int{kSuccess};
  });
}

int cmd_roundtrip(const RoundtripOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BptConfig cfg = BptConfig::from_blocks(opts.bits, opts.blocks);
    const TokenKind kind = parse_token_kind(opts.kind);
    const QuantizedMesh mesh = prepare_mesh(load_obj_file(opts.input), cfg.bits);
    TokenSequence seq = encode_as(mesh, kind, cfg);
    if (opts.tamper) opts.tamper(seq);
    const QuantizedMesh back = decode_any(seq);

    const bool match = back == mesh;
    json report{{"kind", to_string(kind)}, {"match", match}, {"tokens", seq.tokens.size()}};
    if (!match) {
      const auto fa = coordinate_faces(mesh);
      const auto fb = coordinate_faces(back);
      report["vertices"] = {mesh.vertices.size(), back.vertices.size()};
      report["faces"] = {mesh.faces.size(), back.faces.size()};
      report["missing_faces"] = count_missing(fa, fb);
      report["extra_faces"] = count_missing(fb, fa);
      err << "round-trip mismatch for " << opts.input << '\n';
    }
    out << report.dump() << '\n';
    return int{match ? kSuccess : kMismatch};
  });
}

int cmd_stats(const StatsOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BptConfig cfg = BptConfig::from_blocks(opts.bits, opts.blocks);
    std::vector<TokenKind> kinds;
    for (const auto& k : opts.kinds) kinds.push_back(parse_token_kind(k));
    const CorpusManifest m = corpus_stats(expand_inputs(opts.inputs), cfg, kinds);
    out << to_jsonl(m);

    if (!opts.json) {
      err << std::left << std::setw(40) << "mesh" << std::setw(8) << "faces";
      for (TokenKind k : kinds) err << std::setw(10) << to_string(k) << std::setw(8) << "ratio";
      err << '\n';
      for (const auto& r : m.records) {
        err << std::setw(40) << fs::path(r.path).filename().string() << std::setw(8) << r.faces;
        for (TokenKind k : kinds) {
          const auto it = r.token_len.find(k);
          if (it == r.token_len.end()) {
            err << std::setw(10) << "-" << std::setw(8) << "-";
          } else {
            err << std::setw(10) << it->second << std::setw(8) << std::setprecision(3)
                << r.ratio.at(k);
          }
        }
        if (!r.reject_reason.empty()) err << "  (" << r.reject_reason << ")";
        err << '\n';
      }
    }
    return int{kSuccess};
  });
}

int cmd_filter(const FilterOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BptConfig cfg = BptConfig::from_blocks(opts.bits, opts.blocks);
    const CorpusManifest m = filter_by_length(discover_meshes(opts.dir), cfg, opts.max_len);
    const std::string text = to_jsonl(m);
    if (opts.manifest.empty()) {
      out << text;
    } else {
      std::ofstream f(opts.manifest, std::ios::binary | std::ios::trunc);
      if (!f) throw ConfigError("cannot open '" + opts.manifest + "' for writing");
      f << text;
      out << json{{"total", m.summary.total},
                  {"kept", m.summary.kept},
                  {"kept_fraction", m.summary.kept_fraction},
                  {"manifest", opts.manifest}}
                 .dump()
          << '\n';
    }
    err << m.summary.kept << " of " << m.summary.total << " meshes within " << opts.max_len
        << " tokens\n";
    return int{kSuccess};
  });
}

int cmd_metrics(const MetricsOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.points == 0) throw ConfigError("--points must be positive");
    const RawMesh a = load_obj_file(opts.a);
    const RawMesh b = load_obj_file(opts.b);
    const DistanceReport r =
        mesh_distance(a, b, opts.points, opts.seed,
                      opts.raw_sum ? ChamferNormalization::sum : ChamferNormalization::mean);
    out << to_json(r) << '\n';
    return int{kSuccess};
  });
}

}  // namespace bpt::cli
