#pragma once

#include <string>

#include "cli_common.hpp"

namespace lgseq::cli {

struct EncodeArgs {
  std::string graph;
};
struct DecodeArgs {
  std::string tokens;
  bool lenient = false;
  std::string format = "dag";  // dag | lanegraph
};
struct RoundtripArgs {
  std::string graph;
};
struct PromptArgs {
  std::string graph;
  bool shuffle = false;
};
struct AssembleArgs {
  std::string graph;
  std::string pred;  // optional prompt source
};
struct ValidateArgs {
  std::string tokens;
};
struct EvalArgs {
  std::string pred;
  std::string gt;
};
struct GenArgs {
  std::size_t count = 1;
  int roots = 2;
  int max_depth = 6;
  double fork_prob = 0.3;
  double merge_prob = 0.25;
  double curvature = 2.0;
  int edge_cap = 100;
  std::string format = "dag";  // dag | lanegraph | tokens
};
struct NllArgs {
  std::string tokens;
  std::string probs;
  double ncls_weight = 1.0;
};
struct RunArgs {
  std::string probs;
  std::string mode = "greedy";  // greedy | sample
  std::string format = "tokens";  // tokens | dag
};

// Each returns the process exit code; failures escape as exceptions.
int cmd_encode(const CommonOptions& opts, const EncodeArgs& args);
int cmd_decode(const CommonOptions& opts, const DecodeArgs& args);
int cmd_roundtrip(const CommonOptions& opts, const RoundtripArgs& args);
int cmd_prompt(const CommonOptions& opts, const PromptArgs& args);
int cmd_assemble(const CommonOptions& opts, const AssembleArgs& args);
int cmd_validate(const CommonOptions& opts, const ValidateArgs& args);
int cmd_eval(const CommonOptions& opts, const EvalArgs& args);
int cmd_gen(const CommonOptions& opts, const GenArgs& args);
int cmd_nll(const CommonOptions& opts, const NllArgs& args);
int cmd_run(const CommonOptions& opts, const RunArgs& args);

}  // namespace lgseq::cli
