#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace bpt::cli;

  CLI::App app{"Blocked and patchified mesh tokenizer"};
  app.require_subcommand(1);

  EncodeOptions enc;
  auto* encode = app.add_subcommand("encode", "Tokenize an OBJ mesh into a .bpt file");
  encode->add_option("input", enc.input, "Input OBJ")->required();
  encode->add_option("-o,--out", enc.output, "Output .bpt file");
  encode->add_option("--bits", enc.bits, "Quantization bits")->capture_default_str();
  encode->add_option("--blocks", enc.blocks, "Blocks per axis; offsets = 2^bits / blocks")
      ->capture_default_str();
  encode->add_option("--kind", enc.kind, "bpt | vanilla | blocked")->capture_default_str();

  DecodeOptions dec;
  auto* decode = app.add_subcommand("decode", "Decode a .bpt file into an OBJ mesh");
  decode->add_option("input", dec.input, "Input .bpt file")->required();
  decode->add_option("-o,--out", dec.output, "Output OBJ (stdout when omitted)");

  RoundtripOptions rt;
  auto* roundtrip = app.add_subcommand("roundtrip", "Check that encode/decode is lossless");
  roundtrip->add_option("input", rt.input, "Input OBJ")->required();
  roundtrip->add_option("--bits", rt.bits)->capture_default_str();
  roundtrip->add_option("--blocks", rt.blocks)->capture_default_str();
  roundtrip->add_option("--kind", rt.kind)->capture_default_str();

  StatsOptions st;
  auto* stats = app.add_subcommand("stats", "Token counts, ratios and AVD across tokenizers");
  stats->alias("compare");
  stats->add_option("inputs", st.inputs, "OBJ files or directories")->required();
  stats->add_option("--bits", st.bits)->capture_default_str();
  stats->add_option("--blocks", st.blocks)->capture_default_str();
  stats->add_option("--kinds", st.kinds, "Tokenizers to compare")->capture_default_str();
  stats->add_flag("--json", st.json, "JSONL only, no table on stderr");

  FilterOptions fl;
  auto* filter = app.add_subcommand("filter", "Keep meshes whose bpt length fits the context window");
  filter->add_option("dir", fl.dir, "Directory of OBJ files")->required();
  filter->add_option("--max-len", fl.max_len)->capture_default_str();
  filter->add_option("--manifest", fl.manifest, "JSONL manifest path (stdout when omitted)");
  filter->add_option("--bits", fl.bits)->capture_default_str();
  filter->add_option("--blocks", fl.blocks)->capture_default_str();

  MetricsOptions mt;
  auto* metrics = app.add_subcommand("metrics", "Chamfer and Hausdorff distance between two meshes");
  metrics->add_option("a", mt.a, "First OBJ")->required();
  metrics->add_option("b", mt.b, "Second OBJ")->required();
  metrics->add_option("--points", mt.points)->capture_default_str();
  metrics->add_option("--seed", mt.seed)->capture_default_str();
  metrics->add_flag("--raw-sum", mt.raw_sum, "Un-normalized Chamfer sums");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  if (*encode) return cmd_encode(enc, std::cout, std::cerr);
  if (*decode) return cmd_decode(dec, std::cout, std::cerr);
  if (*roundtrip) return cmd_roundtrip(rt, std::cout, std::cerr);
  if (*stats) return cmd_stats(st, std::cout, std::cerr);
  if (*filter) return cmd_filter(fl, std::cout, std::cerr);
  if (*metrics) return cmd_metrics(mt, std::cout, std::cerr);
  return kUsageError;
}
