#include "bpt/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "bpt/baselines.hpp"
#include "bpt/error.hpp"
#include "json.hpp"

namespace bpt {

namespace fs = std::filesystem;

std::vector<std::string> discover_meshes(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".obj") {
      out.push_back(entry.path().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

MeshRecord measure_mesh(const std::string& name, const QuantizedMesh& mesh, const CorpusOptions& opts) {
  MeshRecord rec;
  rec.path = name;
  rec.faces = mesh.faces.size();
  rec.vertices = mesh.vertices.size();
  try {
    for (TokenKind kind : opts.kinds) {
      const TokenSequence seq = encode_as(mesh, kind, opts.config);
      rec.token_len[kind] = seq.tokens.size();
      rec.ratio[kind] = compression_ratio(seq, mesh).ratio;
      if (!opts.avd_windows.empty()) {
        const auto stream = emission_stream(seq);
        rec.avd[kind] = avd_report(stream, opts.avd_windows);
      }
    }
    rec.kept = true;
    if (opts.max_len) {
      const std::size_t len = rec.token_len.count(TokenKind::bpt) ? rec.token_len[TokenKind::bpt]
                                                                   : sequence_length(mesh, opts.config);
      rec.token_len[TokenKind::bpt] = len;
      if (!within_context(len, *opts.max_len)) {
        rec.kept = false;
        rec.reject_reason = "token length " + std::to_string(len) + " exceeds " +
                            std::to_string(*opts.max_len);
      }
    }
  } catch (const std::exception& e) {
    rec.kept = false;
    rec.reject_reason = e.what();
  }
  return rec;
}

namespace {

MeshRecord measure_file(const std::string& path, const CorpusOptions& opts) {
  try {
    const QuantizedMesh mesh = prepare_mesh(load_obj_file(path), opts.config.bits);
    return measure_mesh(path, mesh, opts);
  } catch (const std::exception& e) {
    MeshRecord rec;
    rec.path = path;
    rec.reject_reason = e.what();
    return rec;
  }
}

double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

CorpusManifest summarize(std::vector<MeshRecord> records, std::optional<std::size_t> max_len) {
  std::sort(records.begin(), records.end(),
            [](const MeshRecord& l, const MeshRecord& r) { return l.path < r.path; });
  CorpusManifest m;
  m.max_len = max_len;
  CorpusSummary& s = m.summary;
  s.total = records.size();
  s.kept = static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const MeshRecord& r) { return r.kept; }));
  s.kept_fraction = s.total == 0 ? 0.0 : static_cast<double>(s.kept) / static_cast<double>(s.total);

  static constexpr std::size_t kEdges[] = {0, 500, 1000, 2000, 4000, 8000};
  for (std::size_t i = 0; i < std::size(kEdges); ++i) {
    s.face_histogram.push_back({kEdges[i], i + 1 < std::size(kEdges) ? kEdges[i + 1] : 0, 0});
  }
  std::map<TokenKind, std::vector<double>> ratios;
  std::map<TokenKind, std::map<std::size_t, std::vector<double>>> avds;
  for (const auto& r : records) {
    if (r.faces > 0) {
      for (auto& bin : s.face_histogram) {
        if (r.faces >= bin.lo && (bin.hi == 0 || r.faces < bin.hi)) ++bin.count;
      }
    }
    for (const auto& [kind, ratio] : r.ratio) ratios[kind].push_back(ratio);
    for (const auto& [kind, rep] : r.avd) {
      for (const auto& [t, v] : rep) avds[kind][t].push_back(v);
    }
  }
  for (const auto& [kind, v] : ratios) {
    RatioSummary rs;
    double sum = 0.0;
    for (double x : v) sum += x;
    rs.mean = sum / static_cast<double>(v.size());
    rs.p10 = percentile(v, 0.10);
    rs.p50 = percentile(v, 0.50);
    rs.p90 = percentile(v, 0.90);
    s.ratio[kind] = rs;
  }
  for (const auto& [kind, per_t] : avds) {
    for (const auto& [t, v] : per_t) {
      double sum = 0.0;
      for (double x : v) sum += x;
      s.avd_mean[kind][t] = sum / static_cast<double>(v.size());
    }
  }
  m.records = std::move(records);
  return m;
}

CorpusManifest process_corpus(std::vector<std::string> paths, const CorpusOptions& opts) {
  if (paths.empty()) throw ConfigError("no mesh paths given");
  opts.config.validate();
  std::sort(paths.begin(), paths.end());
  std::vector<MeshRecord> records(paths.size());
  const auto n = static_cast<std::ptrdiff_t>(paths.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    records[i] = measure_file(paths[i], opts);
  }
  return summarize(std::move(records), opts.max_len);
}

CorpusManifest filter_by_length(std::vector<std::string> paths, const BptConfig& cfg, std::size_t max_len) {
  if (max_len < 1) throw ConfigError("max_len must be at least 1");
  CorpusOptions opts;
  opts.config = cfg;
  opts.kinds = {TokenKind::bpt};
  opts.max_len = max_len;
  return process_corpus(std::move(paths), opts);
}

CorpusManifest corpus_stats(std::vector<std::string> paths, const BptConfig& cfg,
                            std::vector<TokenKind> kinds) {
  CorpusOptions opts;
  opts.config = cfg;
  opts.kinds = std::move(kinds);
  opts.avd_windows = {8, 32, 128};
  return process_corpus(std::move(paths), opts);
}

namespace {

nlohmann::json record_to_json(const MeshRecord& r) {
  nlohmann::json j;
  j["path"] = r.path;
  j["faces"] = r.faces;
  j["vertices"] = r.vertices;
  nlohmann::json lens = nlohmann::json::object();
  for (const auto& [kind, len] : r.token_len) lens[std::string(to_string(kind))] = len;
  j["token_len"] = lens;
  nlohmann::json ratios = nlohmann::json::object();
  for (const auto& [kind, v] : r.ratio) ratios[std::string(to_string(kind))] = v;
  j["ratio"] = ratios;
  if (!r.avd.empty()) {
    nlohmann::json avd = nlohmann::json::object();
    for (const auto& [kind, rep] : r.avd) {
      nlohmann::json per = nlohmann::json::object();
      for (const auto& [t, v] : rep) per[std::to_string(t)] = v;
      avd[std::string(to_string(kind))] = per;
    }
    j["avd"] = avd;
  }
  j["kept"] = r.kept;
  j["reject_reason"] = r.reject_reason.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.reject_reason);
  return j;
}

}  // namespace

std::string record_json(const MeshRecord& record) { return record_to_json(record).dump(); }

std::string to_jsonl(const CorpusManifest& manifest) {
  std::string out;
  for (const auto& r : manifest.records) {
    out += record_json(r);
    out += '\n';
  }
  const CorpusSummary& s = manifest.summary;
  nlohmann::json j;
  j["total"] = s.total;
  j["kept"] = s.kept;
  j["kept_fraction"] = s.kept_fraction;
  if (manifest.max_len) j["max_len"] = *manifest.max_len;
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& b : s.face_histogram) {
    hist.push_back({{"lo", b.lo}, {"hi", b.hi == 0 ? nlohmann::json(nullptr) : nlohmann::json(b.hi)},
                    {"count", b.count}});
  }
  j["face_histogram"] = hist;
  nlohmann::json ratios = nlohmann::json::object();
  for (const auto& [kind, r] : s.ratio) {
    ratios[std::string(to_string(kind))] = {{"mean", r.mean}, {"p10", r.p10}, {"p50", r.p50}, {"p90", r.p90}};
  }
  j["ratio"] = ratios;
  if (!s.avd_mean.empty()) {
    nlohmann::json avd = nlohmann::json::object();
    for (const auto& [kind, per] : s.avd_mean) {
      nlohmann::json pj = nlohmann::json::object();
      for (const auto& [t, v] : per) pj[std::to_string(t)] = v;
      avd[std::string(to_string(kind))] = pj;
    }
    j["avd_mean"] = avd;
  }
  out += nlohmann::json{{"summary", j}}.dump();
  out += '\n';
  return out;
}

}  // namespace bpt
