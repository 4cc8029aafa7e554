#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "lgseq/error.hpp"

namespace {

using namespace lgseq::cli;

int exit_code(const lgseq::Error& e) {
  switch (lgseq::error_class(e.code())) {
    case lgseq::ErrorClass::Io:
      return 1;
    case lgseq::ErrorClass::Budget:
      return 3;
    case lgseq::ErrorClass::Validation:
      break;
  }
  return 2;
}

void add_common(CLI::App* sub, CommonOptions& opts, bool with_out = true) {
  sub->add_option("--config", opts.config_path, "key = value config file (default: $LGSEQ_CONFIG)");
  sub->add_option("--seed", opts.seed, "seed for every randomized step");
  sub->add_option("--jobs", opts.jobs, "worker threads over independent items")->check(CLI::PositiveNumber);
  if (with_out) sub->add_option("--out", opts.out_path, "output file (default: standard output)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lane-graph token sequence tool"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(LGSEQ_CLI_VERSION));

  CommonOptions opts;

  EncodeArgs enc;
  auto* c_encode = app.add_subcommand("encode", "Lane graph or DAG JSON to padded token lines");
  c_encode->add_option("--graph", enc.graph, "graph JSON")->required();
  add_common(c_encode, opts);

  DecodeArgs dec;
  auto* c_decode = app.add_subcommand("decode", "Token lines to DAG or lane graph JSON");
  c_decode->add_option("--tokens", dec.tokens, "token-sequence file")->required();
  c_decode->add_flag("--lenient", dec.lenient, "skip malformed sextets instead of failing");
  c_decode->add_option("--format", dec.format, "dag | lanegraph");
  add_common(c_decode, opts);

  RoundtripArgs rt;
  auto* c_roundtrip = app.add_subcommand("roundtrip", "Encode, decode and compare each graph");
  c_roundtrip->add_option("--graph", rt.graph, "graph JSON")->required();
  add_common(c_roundtrip, opts);

  PromptArgs pr;
  auto* c_prompt = app.add_subcommand("prompt", "Quantized keypoint prompt per graph");
  c_prompt->add_option("--graph", pr.graph, "graph JSON")->required();
  c_prompt->add_flag("--shuffle", pr.shuffle, "randomize prompt order from the seed");
  add_common(c_prompt, opts);

  AssembleArgs as;
  auto* c_assemble = app.add_subcommand("assemble", "Input and target lines per ground-truth graph");
  c_assemble->add_option("--graph", as.graph, "ground-truth graph JSON")->required();
  c_assemble->add_option("--pred", as.pred, "graphs the prompts are taken from (default: ground truth)");
  add_common(c_assemble, opts);

  ValidateArgs va;
  auto* c_validate = app.add_subcommand("validate", "Grammar check of token lines");
  c_validate->add_option("--tokens", va.tokens, "token-sequence file")->required();
  add_common(c_validate, opts);

  EvalArgs ev;
  auto* c_eval = app.add_subcommand("eval", "Score predicted graphs against ground truth");
  c_eval->add_option("--pred", ev.pred, "predicted graph JSON")->required();
  c_eval->add_option("--gt", ev.gt, "ground-truth graph JSON")->required();
  add_common(c_eval, opts);

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Seeded synthetic keypoint DAGs");
  c_gen->add_option("--count", gen.count, "number of graphs");
  c_gen->add_option("--roots", gen.roots);
  c_gen->add_option("--max-depth", gen.max_depth);
  c_gen->add_option("--fork-prob", gen.fork_prob);
  c_gen->add_option("--merge-prob", gen.merge_prob);
  c_gen->add_option("--curvature", gen.curvature);
  c_gen->add_option("--edge-cap", gen.edge_cap);
  c_gen->add_option("--format", gen.format, "dag | lanegraph | tokens");
  add_common(c_gen, opts);

  NllArgs nl;
  auto* c_nll = app.add_subcommand("nll", "Weighted negative log-likelihood of target lines");
  c_nll->add_option("--tokens", nl.tokens, "target token lines")->required();
  c_nll->add_option("--probs", nl.probs, "TOKPROB table, one row per target token")->required();
  c_nll->add_option("--ncls-weight", nl.ncls_weight, "weight of noise-class targets");
  add_common(c_nll, opts);

  RunArgs ru;
  auto* c_run = app.add_subcommand("run", "Grammar-constrained decoding over a TOKPROB table");
  c_run->add_option("--probs", ru.probs, "TOKPROB table, one row per step")->required();
  c_run->add_option("--mode", ru.mode, "greedy | sample");
  c_run->add_option("--format", ru.format, "tokens | dag");
  add_common(c_run, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_encode->parsed()) return cmd_encode(opts, enc);
    if (c_decode->parsed()) return cmd_decode(opts, dec);
    if (c_roundtrip->parsed()) return cmd_roundtrip(opts, rt);
    if (c_prompt->parsed()) return cmd_prompt(opts, pr);
    if (c_assemble->parsed()) return cmd_assemble(opts, as);
    if (c_validate->parsed()) return cmd_validate(opts, va);
    if (c_eval->parsed()) return cmd_eval(opts, ev);
    if (c_gen->parsed()) return cmd_gen(opts, gen);
    if (c_nll->parsed()) return cmd_nll(opts, nl);
    if (c_run->parsed()) return cmd_run(opts, ru);
  } catch (const ItemError& item) {
    try {
      std::rethrow_exception(item.inner());
    } catch (const lgseq::Error& e) {
      std::cerr << "lgseq: item " << item.index() << ": " << e.what() << "\n";
      return exit_code(e);
    } catch (const std::exception& e) {
      std::cerr << "lgseq: item " << item.index() << ": " << e.what() << "\n";
      return 1;
    }
  } catch (const lgseq::Error& e) {
    std::cerr << "lgseq: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "lgseq: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
