#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "bpt/tokenizer.hpp"

namespace bpt::cli {

enum ExitStatus : int { kSuccess = 0, kUsageError = 1, kMismatch = 2 };

struct EncodeOptions {
  std::string input;
  std::string output;
  int bits = 7;
  std::uint32_t blocks = 8;
  std::string kind = "bpt";
};

struct DecodeOptions {
  std::string input;
  std::string output;
};

struct RoundtripOptions {
  std::string input;
  int bits = 7;
  std::uint32_t blocks = 8;
  std::string kind = "bpt";
  // Applied to the token sequence between encode and decode; lets tests
  // exercise the mismatch path.
  std::function<void(TokenSequence&)> tamper;
};

struct StatsOptions {
  std::vector<std::string> inputs;  // files or directories
  int bits = 7;
  std::uint32_t blocks = 8;
  std::vector<std::string> kinds{"vanilla", "blocked", "bpt"};
  bool json = false;
};

struct FilterOptions {
  std::string dir;
  std::size_t max_len = 9600;
  std::string manifest;  // empty: write the manifest to stdout
  int bits = 7;
  std::uint32_t blocks = 8;
};

struct MetricsOptions {
  std::string a;
  std::string b;
  std::size_t points = 1024;
  std::uint64_t seed = 0;
  bool raw_sum = false;
};

int cmd_encode(const EncodeOptions& opts, std::ostream& out, std::ostream& err);
int cmd_decode(const DecodeOptions& opts, std::ostream& out, std::ostream& err);
int cmd_roundtrip(const RoundtripOptions& opts, std::ostream& out, std::ostream& err);
int cmd_stats(const StatsOptions& opts, std::ostream& out, std::ostream& err);
int cmd_filter(const FilterOptions& opts, std::ostream& out, std::ostream& err);
int cmd_metrics(const MetricsOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace bpt::cli
