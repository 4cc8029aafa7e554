#include "cli_common.hpp"

#include <charconv>
#include <cstdlib>
#include <iostream>

#include "lgseq/error.hpp"
#include "lgseq/text_io.hpp"

namespace lgseq::cli {

CodecConfig resolve_config(const CommonOptions& opts) {
  CodecConfig cfg;
  std::string path = opts.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("LGSEQ_CONFIG"); env && *env) path = env;
  }
  if (!path.empty()) cfg = load_config(path);
  if (opts.seed) cfg.seed = *opts.seed;
  return cfg;
}

std::uint64_t item_seed(std::uint64_t seed, std::size_t index) {
  // splitmix64 finalizer over (seed, index)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void emit(const CommonOptions& opts, const std::string& content) {
  if (opts.out_path.empty()) {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw Error(ErrorCode::IoError, "cannot write to standard output");
  } else {
    write_text_file(opts.out_path, content);
  }
}

LaneGraph as_lanegraph(const GraphDocument& doc, const CodecConfig& cfg) {
  if (doc.kind == GraphDocument::Kind::LaneGraph) return doc.lanes;
  return dag_to_lanegraph(doc.dag, cfg);
}

KeyPointDag as_dag(const GraphDocument& doc, const CodecConfig& cfg) {
  if (doc.kind == GraphDocument::Kind::Dag) return doc.dag;
  return lanegraph_to_dag(doc.lanes, cfg);
}

std::vector<GraphDocument> read_graphs(const std::string& path) {
  return graph_documents_from_json(read_text_file(path));
}

std::vector<std::string> read_lines(const std::string& path) {
  const std::string text = read_text_file(path);
  std::vector<std::string> out;
  for (auto line : split_lines(text)) out.emplace_back(line);
  return out;
}

std::string json_sequence(const std::vector<std::string>& docs, bool force_array) {
  auto strip = [](std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
    return s;
  };
  if (docs.size() == 1 && !force_array) return strip(docs.front()) + "\n";
  std::string out = "[";
  for (std::size_t i = 0; i < docs.size(); ++i) {
    out += i ? ",\n" : "\n";
    out += strip(docs[i]);
  }
  out += "\n]\n";
  return out;
}

std::string format_double(double v) {
  char buf[64];
  // shortest text that reads back to the same double
  const auto res = std::to_chars(buf, buf + sizeof buf, v == 0.0 ? 0.0 : v);
  std::string out(buf, res.ptr);
  // keep a decimal point so integral values still read as reals
  if (out.find_first_of(".eni") == std::string::npos) out += ".0";
  return out;
}

}  // namespace lgseq::cli
