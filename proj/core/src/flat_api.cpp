#include "lgseq/flat_api.hpp"

#include "lgseq/codec.hpp"
#include "lgseq/decode_engine.hpp"
#include "lgseq/error.hpp"
#include "lgseq/prompt_builder.hpp"
#include "lgseq/training_pair.hpp"

#ifndef LGSEQ_VERSION
#define LGSEQ_VERSION "0.0.0"
#endif

namespace lgseq::flat {

std::string_view version() noexcept { return LGSEQ_VERSION; }

CodecConfig config_from_pairs(std::span<const std::pair<std::string, std::string>> pairs) {
  std::string text;
  for (const auto& [k, v] : pairs) text += k + " = " + v + "\n";
  return parse_config(text);
}

namespace {

KeyPointDag to_dag(const FlatDag& flat) {
  if (flat.keypoints.size() % 3 != 0 || flat.edges.size() % 2 != 0 ||
      flat.controls.size() != flat.edges.size()) {
    throw Error(ErrorCode::LengthMismatch, "flat DAG arrays have inconsistent shapes");
  }
  KeyPointDag dag;
  for (std::size_t i = 0; i < flat.keypoints.size(); i += 3) {
    dag.keypoints.push_back({flat.keypoints[i], flat.keypoints[i + 1], flat.keypoints[i + 2]});
  }
  for (std::size_t i = 0; i < flat.edges.size(); i += 2) {
    if (flat.edges[i] < 0 || flat.edges[i + 1] < 0) {
      throw Error(ErrorCode::InvalidGraph, "negative keypoint id");
    }
    dag.edges.push_back({static_cast<std::size_t>(flat.edges[i]),
                         static_cast<std::size_t>(flat.edges[i + 1]),
                         {flat.controls[i], flat.controls[i + 1]},
                         std::nullopt});
  }
  return dag;
}

PromptSet to_prompt(std::span<const std::int32_t> pairs) {
  if (pairs.size() % 2 != 0) throw Error(ErrorCode::LengthMismatch, "odd prompt array length");
  PromptSet p;
  for (std::size_t i = 0; i < pairs.size(); i += 2) p.push({pairs[i], pairs[i + 1]}, PromptSource::Real);
  return p;
}

std::vector<std::int32_t> from_prompt(const PromptSet& p) {
  std::vector<std::int32_t> out;
  out.reserve(2 * p.size());
  for (const auto q : p.points) out.insert(out.end(), {q.xb, q.yb});
  return out;
}

}  // namespace

std::vector<Token> encode(const FlatDag& dag, const CodecConfig& cfg) {
  return lgseq::encode(to_dag(dag), cfg).tokens(cfg);
}

FlatDag decode(std::span<const Token> tokens, const CodecConfig& cfg) {
  const auto dag = lgseq::decode(tokens, cfg);
  FlatDag out;
  for (const auto& k : dag.keypoints) out.keypoints.insert(out.keypoints.end(), {k.x, k.y, k.z});
  for (const auto& e : dag.edges) {
    out.edges.insert(out.edges.end(),
                     {static_cast<std::int64_t>(e.src), static_cast<std::int64_t>(e.dst)});
    out.controls.insert(out.controls.end(), {e.control.x, e.control.y});
  }
  return out;
}

std::vector<std::int32_t> extract_keypoints(std::span<const double> points, std::size_t lanes,
                                            std::size_t points_per_lane,
                                            std::span<const double> adjacency,
                                            std::span<const double> scores, const CodecConfig& cfg) {
  if (points.size() != lanes * points_per_lane * 3 || adjacency.size() != lanes * lanes ||
      (!scores.empty() && scores.size() != lanes)) {
    throw Error(ErrorCode::LengthMismatch, "lane graph arrays have inconsistent shapes");
  }
  LaneGraph g;
  for (std::size_t l = 0; l < lanes; ++l) {
    Centerline c;
    for (std::size_t k = 0; k < points_per_lane; ++k) {
      const std::size_t at = (l * points_per_lane + k) * 3;
      c.points.push_back({points[at], points[at + 1], points[at + 2]});
    }
    g.lanes.push_back(std::move(c));
    g.adjacency.emplace_back(adjacency.begin() + static_cast<std::ptrdiff_t>(l * lanes),
                             adjacency.begin() + static_cast<std::ptrdiff_t>((l + 1) * lanes));
  }
  for (const double s : scores) g.scores.emplace_back(s);
  return from_prompt(lgseq::extract_keypoints(g, cfg));
}

std::vector<std::int32_t> shuffle_prompt(std::span<const std::int32_t> pairs, std::uint64_t seed) {
  Rng rng(seed);
  return from_prompt(lgseq::shuffle_prompt(to_prompt(pairs), rng));
}

std::pair<std::vector<Token>, std::vector<Token>> assemble_training_pair(
    std::span<const Token> gt_tokens, std::span<const std::int32_t> prompt_pairs,
    const CodecConfig& cfg, std::uint64_t seed) {
  const EdgeSequence gt = parse_edge_sequence(gt_tokens, cfg);
  Rng rng(seed);
  auto pair = lgseq::assemble_training_pair(gt, to_prompt(prompt_pairs), cfg, rng);
  return {std::move(pair.input), std::move(pair.target)};
}

std::vector<Token> next_mask(std::span<const Token> prefix, const CodecConfig& cfg) {
  DecoderState state = DecoderState::edges();
  for (const Token t : prefix) state = advance(std::move(state), t, cfg);
  if (state.phase == Phase::Done) return {};
  return lgseq::next_mask(state, cfg).allowed;
}

double sequence_nll(std::span<const Token> target, std::span<const float> probs, std::size_t rows,
                    std::size_t cols, double noise_weight, const CodecConfig& cfg) {
  if (probs.size() != rows * cols) {
    throw Error(ErrorCode::LengthMismatch, "probability array is not rows x cols");
  }
  ProbTable table(rows, cols);
  std::copy(probs.begin(), probs.end(), table.data.begin());
  ClassWeights w;
  w.noise = noise_weight;
  return lgseq::sequence_nll(target, table, w, cfg);
}

}  // namespace lgseq::flat
