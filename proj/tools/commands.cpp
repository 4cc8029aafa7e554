#include "commands.hpp"

#include <algorithm>
#include <iostream>

#include "lgseq/codec.hpp"
#include "lgseq/decode_engine.hpp"
#include "lgseq/error.hpp"
#include "lgseq/metrics.hpp"
#include "lgseq/prompt_builder.hpp"
#include "lgseq/rng.hpp"
#include "lgseq/synth_gen.hpp"
#include "lgseq/text_io.hpp"
#include "lgseq/tokprob.hpp"
#include "lgseq/training_pair.hpp"

namespace lgseq::cli {

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

}  // namespace

int cmd_encode(const CommonOptions& opts, const EncodeArgs& args) {
  const CodecConfig cfg = resolve_config(opts);
  const auto docs = read_graphs(args.graph);
  const auto lines = parallel_map<std::string>(docs.size(), opts.jobs, [&](std::size_t i) {
    return tokens_to_line(encode(as_dag(docs[i], cfg), cfg).tokens(cfg));
  });
  emit(opts, join_lines(lines));
  return 0;
}

int cmd_decode(const CommonOptions& opts, const DecodeArgs& args) {
  const CodecConfig cfg = resolve_config(opts);
  if (args.format != "dag" && args.format != "lanegraph") {
    throw Error(ErrorCode::ParseError, "unknown --format '" + args.format + "'");
  }
  const auto lines = read_lines(args.tokens);
  struct Out {
    std::string json;
    std::vector<SequenceViolation> violations;
  };
  const auto outs = parallel_map<Out>(lines.size(), opts.jobs, [&](std::size_t i) {
    const auto tokens = tokens_from_line(lines[i]);
    Out o;
    KeyPointDag dag;
    if (args.lenient) {
      auto r = decode_lenient(tokens, cfg);
      dag = std::move(r.dag);
      o.violations = std::move(r.violations);
    } else {
      dag = decode(tokens, cfg);
    }
    o.json = args.format == "dag" ? dag_to_json(dag) : lanegraph_to_json(dag_to_lanegraph(dag, cfg));
    return o;
  });
  std::vector<std::string> docs;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    for (const auto& v : outs[i].violations) std::cerr << "line " << i + 1 << ": skipped " << v.describe() << "\n";
    docs.push_back(outs[i].json);
  }
  emit(opts, json_sequence(docs, docs.size() != 1));
  return 0;
}

int cmd_roundtrip(const CommonOptions& opts, const RoundtripArgs& args) {
  const CodecConfig cfg = resolve_config(opts);
  const auto docs = read_graphs(args.graph);
  const double bound = 0.5 * std::max(cfg.bin_width_x(), cfg.bin_width_y()) + 1e-6;
  struct Verdict {
    bool exact;
    double deviation;
  };
  const auto verdicts = parallel_map<Verdict>(docs.size(), opts.jobs, [&](std::size_t i) {
    const KeyPointDag src = as_dag(docs[i], cfg);
    EncodeTrace trace;
    const auto tokens = encode(src, cfg, &trace).tokens(cfg);
    const KeyPointDag back = decode(tokens, cfg);
    if (back.keypoints.size() != src.keypoints.size() ||
        trace.keypoint_order.size() != src.keypoints.size()) {
      return Verdict{false, 0.0};
    }
    std::vector<std::size_t> map(src.keypoints.size());
    for (std::size_t k = 0; k < trace.keypoint_order.size(); ++k) map[trace.keypoint_order[k]] = k;
    const auto cmp = compare_dags(src, back, map);
    return Verdict{cmp.topology_equal, cmp.max_deviation};
  });
  std::string report;
  bool ok = true;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const bool pass = verdicts[i].exact && verdicts[i].deviation <= bound;
    ok = ok && pass;
    report += "item=" + std::to_string(i) + " topology=" + (verdicts[i].exact ? "exact" : "mismatch") +
              " max_deviation=" + format_double(verdicts[i].deviation) + " status=" + (pass ? "ok" : "fail") +
              "\n";
    if (!pass) std::cerr << "item " << i << ": round trip failed\n";
  }
  emit(opts, report);
  return ok ? 0 : 2;
}

int cmd_prompt(const CommonOptions& opts, const PromptArgs& args) {
  const CodecConfig cfg = resolve_config(opts);
  const auto docs = read_graphs(args.graph);
  const auto lines = parallel_map<std::string>(docs.size(), opts.jobs, [&](std::size_t i) {
    PromptSet p = extract_keypoints(as_lanegraph(docs[i], cfg), cfg);
    if (args.shuffle) {
      Rng rng(item_seed(cfg.seed, i));
      p = shuffle_prompt(std::move(p), rng);
    }
    return prompt_to_line(p);
  });
  emit(opts, join_lines(lines));
  return 0;
}

int cmd_assemble(const CommonOptions& opts, const AssembleArgs& args) {
  const CodecConfig cfg = resolve_config(opts);
  const auto gts = read_graphs(args.graph);
  std::vector<GraphDocument> preds;
  if (!args.pred.empty()) {
    preds = read_graphs(args.pred);
    if (preds.size() != gts.size()) {
      throw Error(ErrorCode::LengthMismatch, "--pred holds " + std::to_string(preds.size()) +
                                                 " graphs, --graph holds " + std::to_string(gts.size()));
    }
  }
  const auto pairs = parallel_map<std::string>(gts.size(), opts.jobs, [&](std::size_t i) {
    const EdgeSequence gt = encode(as_dag(gts[i], cfg), cfg);
    const GraphDocument& source = preds.empty() ? gts[i] : preds[i];
    const PromptSet prompt = extract_keypoints(as_lanegraph(source, cfg), cfg);
    Rng rng(item_seed(cfg.seed, i));
    const TrainingPair tp = assemble_training_pair(gt, prompt, cfg, rng);
    return tokens_to_line(tp.input) + "\n" + tokens_to_line(tp.target);
  });
  emit(opts, join_lines(pairs));
  return 0;
}

int cmd_validate(const CommonOptions& opts, const ValidateArgs& args) {
  const CodecConfig cfg = resolve_config(opts);
  const auto lines = read_lines(args.tokens);
  const auto results = parallel_map<std::vector<SequenceViolation>>(
      lines.size(), opts.jobs, [&](std::size_t i) { return validate_sequence(tokens_from_line(lines[i]), cfg); });
  std::string report;
  bool ok = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    report += "line=" + std::to_string(i + 1);
    if (results[i].empty()) {
      report += " ok\n";
      continue;
    }
    ok = false;
    for (const auto& v : results[i]) {
      report += " " + v.describe();
      std::cerr << "line " << i + 1 << ": " << v.describe() << "\n";
    }
    report += "\n";
  }
  emit(opts, report);
  return ok ? 0 : 2;
}

int cmd_eval(const CommonOptions& opts, const EvalArgs& args) {
  const CodecConfig cfg = resolve_config(opts);
  const auto preds = read_graphs(args.pred);
  const auto gts = read_graphs(args.gt);
  if (preds.size() != gts.size()) {
    throw Error(ErrorCode::LengthMismatch, "--pred holds " + std::to_string(preds.size()) +
                                               " graphs, --gt holds " + std::to_string(gts.size()));
  }
  const auto reports = parallel_map<std::string>(preds.size(), opts.jobs, [&](std::size_t i) {
    return report_to_json(evaluate(as_lanegraph(preds[i], cfg), as_lanegraph(gts[i], cfg), cfg));
  });
  emit(opts, json_sequence(reports, reports.size() != 1));
  return 0;
}

int cmd_gen(const CommonOptions& opts, const GenArgs& args) {
  const CodecConfig cfg = resolve_config(opts);
  if (args.format != "dag" && args.format != "lanegraph" && args.format != "tokens") {
    throw Error(ErrorCode::ParseError, "unknown --format '" + args.format + "'");
  }
  GenSpec base;
  base.roots = args.roots;
  base.max_depth = args.max_depth;
  base.fork_prob = args.fork_prob;
  base.merge_prob = args.merge_prob;
  base.curvature = args.curvature;
  base.edge_cap = args.edge_cap;
  base.validate();
  const auto outs = parallel_map<std::string>(args.count, opts.jobs, [&](std::size_t i) {
    GenSpec spec = base;
    spec.seed = item_seed(cfg.seed, i);
    const KeyPointDag dag = generate(spec, cfg);
    if (args.format == "tokens") return tokens_to_line(encode(dag, cfg).tokens(cfg));
    if (args.format == "lanegraph") return lanegraph_to_json(dag_to_lanegraph(dag, cfg));
    return dag_to_json(dag);
  });
  if (args.format == "tokens") {
    emit(opts, join_lines(outs));
  } else {
    emit(opts, json_sequence(outs, true));
  }
  return 0;
}

int cmd_nll(const CommonOptions& opts, const NllArgs& args) {
  const CodecConfig cfg = resolve_config(opts);
  const auto lines = read_lines(args.tokens);
  const ProbTable table = read_tokprob_file(args.probs);
  std::vector<std::vector<Token>> targets;
  std::size_t total = 0;
  for (const auto& l : lines) {
    targets.push_back(tokens_from_line(l));
    total += targets.back().size();
  }
  if (total != table.rows) {
    throw Error(ErrorCode::LengthMismatch, "table has " + std::to_string(table.rows) +
                                               " rows, target files hold " + std::to_string(total) + " tokens");
  }
  ClassWeights w;
  w.noise = args.ncls_weight;
  std::vector<std::size_t> offsets;
  std::size_t at = 0;
  for (const auto& t : targets) {
    offsets.push_back(at);
    at += t.size();
  }
  const auto values = parallel_map<std::string>(targets.size(), opts.jobs, [&](std::size_t i) {
    ProbTable slice(targets[i].size(), table.cols);
    std::copy_n(table.data.begin() + static_cast<std::ptrdiff_t>(offsets[i] * table.cols),
                slice.data.size(), slice.data.begin());
    return format_double(sequence_nll(targets[i], slice, w, cfg));
  });
  emit(opts, join_lines(values));
  return 0;
}

int cmd_run(const CommonOptions& opts, const RunArgs& args) {
  const CodecConfig cfg = resolve_config(opts);
  DecodeMode mode;
  if (args.mode == "greedy") {
    mode = DecodeMode::Greedy;
  } else if (args.mode == "sample") {
    mode = DecodeMode::Sample;
  } else {
    throw Error(ErrorCode::ParseError, "unknown --mode '" + args.mode + "'");
  }
  if (args.format != "tokens" && args.format != "dag") {
    throw Error(ErrorCode::ParseError, "unknown --format '" + args.format + "'");
  }
  const ProbTable table = read_tokprob_file(args.probs);
  TableProvider provider(table);
  Rng rng(cfg.seed);
  const RunResult r = run(provider, cfg, mode, rng);
  emit(opts, args.format == "tokens" ? tokens_to_line(r.tokens) + "\n" : json_sequence({dag_to_json(r.dag)}, false));
  return 0;
}

}  // namespace lgseq::cli
