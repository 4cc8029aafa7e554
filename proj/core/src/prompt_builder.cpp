#include "lgseq/prompt_builder.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

namespace lgseq {

PromptSet extract_keypoints(const LaneGraph& graph, const CodecConfig& cfg) {
  graph.check_shape();
  const std::size_t m = graph.size();

  std::vector<std::size_t> selected;
  std::vector<bool> is_selected(m, false);
  for (std::size_t j = 0; j < m; ++j) {
    if (graph.score(j) >= cfg.score_threshold) {
      selected.push_back(j);
      is_selected[j] = true;
    }
  }
  std::stable_sort(selected.begin(), selected.end(), [&](std::size_t a, std::size_t b) {
    return graph.score(a) > graph.score(b);
  });

  PromptSet prompt;
  std::set<QuantPoint> seen;
  const auto budget = static_cast<std::size_t>(cfg.max_prompt_points);
  for (const std::size_t j : selected) {
    bool has_selected_predecessor = false;
    for (std::size_t i = 0; i < m && !has_selected_predecessor; ++i) {
      has_selected_predecessor = is_selected[i] && graph.connected(i, j, cfg.adjacency_threshold);
    }

    const auto& pts = graph.lanes[j].points;
    std::vector<QuantPoint> contribution;
    if (!has_selected_predecessor) contribution.push_back(quantize(pts.front().xy(), cfg));
    contribution.push_back(quantize(pts.back().xy(), cfg));

    std::vector<QuantPoint> fresh;
    for (const auto q : contribution) {
      if (!seen.count(q) && std::find(fresh.begin(), fresh.end(), q) == fresh.end()) {
        fresh.push_back(q);
      }
    }
    if (prompt.size() + fresh.size() > budget) break;
    for (const auto q : fresh) {
      seen.insert(q);
      prompt.push(q, PromptSource::Real);
    }
  }
  return prompt;
}

PromptSet shuffle_prompt(PromptSet prompt, Rng& rng) {
  const std::size_t n = prompt.size();
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_index(i));
    std::swap(prompt.points[i - 1], prompt.points[j]);
    std::swap(prompt.provenance[i - 1], prompt.provenance[j]);
  }
  return prompt;
}

}  // namespace lgseq
