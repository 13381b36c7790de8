#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bpt/config.hpp"
#include "bpt/metrics.hpp"
#include "bpt/tokenizer.hpp"

namespace bpt {

inline constexpr std::size_t kDefaultContextWindow = 9600;

struct MeshRecord {
  std::string path;
  std::size_t faces = 0;
  std::size_t vertices = 0;
  std::map<TokenKind, std::size_t> token_len;  // full length, BOS/EOS included
  std::map<TokenKind, double> ratio;
  std::map<TokenKind, AvdReport> avd;
  bool kept = false;
  std::string reject_reason;  // empty when kept
};

struct HistogramBin {
  std::size_t lo = 0;
  std::size_t hi = 0;  // exclusive; 0 means unbounded
  std::size_t count = 0;
};

struct RatioSummary {
  double mean = 0.0;
  double p10 = 0.0;
  double p50 = 0.0;
  double p90 = 0.0;
};

struct CorpusSummary {
  std::size_t total = 0;
  std::size_t kept = 0;
  double kept_fraction = 0.0;
  std::vector<HistogramBin> face_histogram;
  std::map<TokenKind, RatioSummary> ratio;
  std::map<TokenKind, std::map<std::size_t, double>> avd_mean;
};

struct CorpusManifest {
  std::vector<MeshRecord> records;  // sorted by path
  CorpusSummary summary;
  std::optional<std::size_t> max_len;
};

struct CorpusOptions {
  BptConfig config;
  std::vector<TokenKind> kinds{TokenKind::bpt};
  std::optional<std::size_t> max_len;  // length filter on the bpt sequence
  std::vector<std::size_t> avd_windows;
};

// Inclusive: a sequence exactly filling the window is kept.
inline bool within_context(std::size_t length, std::size_t max_len) { return length <= max_len; }

// Every *.obj directly inside `dir`, sorted.
std::vector<std::string> discover_meshes(const std::string& dir);

// Measures an already-quantized mesh; never throws for tokenizer failures,
// which are recorded in reject_reason instead.
MeshRecord measure_mesh(const std::string& name, const QuantizedMesh& mesh, const CorpusOptions& opts);

CorpusManifest process_corpus(std::vector<std::string> paths, const CorpusOptions& opts);
CorpusManifest summarize(std::vector<MeshRecord> records, std::optional<std::size_t> max_len);

CorpusManifest filter_by_length(std::vector<std::string> paths, const BptConfig& cfg,
                                std::size_t max_len = kDefaultContextWindow);
CorpusManifest corpus_stats(std::vector<std::string> paths, const BptConfig& cfg,
                            std::vector<TokenKind> kinds);

// One JSON object per record, then {"summary": {...}}.
std::string to_jsonl(const CorpusManifest& manifest);
std::string record_json(const MeshRecord& record);

}  // namespace bpt
