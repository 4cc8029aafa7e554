#include "lgseq/training_pair.hpp"

#include <algorithm>
#include <string>

namespace lgseq {

TrainingPair assemble_training_pair(const EdgeSequence& gt, const PromptSet& prompt,
                                    const CodecConfig& cfg, Rng& rng) {
  const Vocabulary vocab(cfg);
  const auto max_edges = static_cast<std::size_t>(cfg.max_edges);
  const auto max_points = static_cast<std::size_t>(cfg.max_prompt_points);
  if (gt.sextets.size() > max_edges) {
    throw Error(ErrorCode::BudgetExceeded, std::to_string(gt.sextets.size()) +
                                               " sextets exceed the edge budget of " +
                                               std::to_string(max_edges));
  }
  if (prompt.size() > max_points) {
    throw Error(ErrorCode::BudgetExceeded, std::to_string(prompt.size()) +
                                               " prompt points exceed the budget of " +
                                               std::to_string(max_points));
  }

  int gt_keypoints = 0;
  for (const auto& s : gt.sextets) gt_keypoints += s.cls != KeyClass::Clone ? 1 : 0;

  TrainingPair pair;
  pair.real_sextets = gt.sextets.size();
  pair.noise_sextets = max_edges - gt.sextets.size();

  std::vector<EdgeSextet> noise;
  noise.reserve(pair.noise_sextets);
  for (std::size_t i = 0; i < pair.noise_sextets; ++i) {
    EdgeSextet s;
    s.xb = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(cfg.x_bins)));
    s.yb = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(cfg.y_bins)));
    s.cls = static_cast<KeyClass>(rng.uniform_index(4));
    s.con = (s.cls == KeyClass::Ancestor || s.cls == KeyClass::Lineal)
                ? 0
                : static_cast<int>(rng.uniform_int(1, std::max(1, gt_keypoints)));
    s.bxb = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(cfg.x_bins)));
    s.byb = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(cfg.y_bins)));
    noise.push_back(s);
  }

  PromptSet full = prompt;
  for (const auto& s : noise) {
    if (full.size() == max_points) break;
    full.push({s.xb, s.yb}, PromptSource::Noise);
  }
  pair.prompt = shuffle_prompt(std::move(full), rng);

  const std::size_t prompt_tokens = 2 * max_points;
  const std::size_t edge_tokens = 6 * max_edges;
  const std::size_t length = prompt_tokens + edge_tokens + 2;

  auto& in = pair.input;
  in.reserve(length);
  in.push_back(vocab.start());
  for (const auto q : pair.prompt.points) in.insert(in.end(), {q.xb, q.yb});
  in.resize(1 + prompt_tokens, vocab.pad());
  in.push_back(vocab.eok());

  auto& out = pair.target;
  out.reserve(length);
  out.assign(prompt_tokens + 1, vocab.pad());

  for (const auto& s : gt.sextets) {
    const Token toks[6] = {s.xb, s.yb, vocab.class_token(s.cls), s.con, s.bxb, s.byb};
    in.insert(in.end(), std::begin(toks), std::end(toks));
    out.insert(out.end(), std::begin(toks), std::end(toks));
  }
  for (const auto& s : noise) {
    in.insert(in.end(), {s.xb, s.yb, vocab.class_token(s.cls), s.con, s.bxb, s.byb});
    out.insert(out.end(), {vocab.pad(), vocab.pad(), vocab.ncls(), vocab.pad(), vocab.pad(),
                           vocab.pad()});
  }
  out.push_back(vocab.eos());
  return pair;
}

}  // namespace lgseq
