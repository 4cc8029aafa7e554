#pragma once

#include <cstdint>
#include <vector>

#include "lgseq/config.hpp"
#include "lgseq/graph_model.hpp"
#include "lgseq/quantizer.hpp"
#include "lgseq/rng.hpp"

namespace lgseq {

enum class PromptSource : std::uint8_t { Real, Noise };

/// Quantized keypoint prompt. points[i] and provenance[i] travel together.
struct PromptSet {
  std::vector<QuantPoint> points;
  std::vector<PromptSource> provenance;
  std::uint64_t order_seed = 0;  // recorded by whoever seeded the shuffle

  std::size_t size() const { return points.size(); }
  void push(QuantPoint q, PromptSource src) {
    points.push_back(q);
    provenance.push_back(src);
  }
};

/// Keypoint prompt from a (predicted or ground-truth) lane graph.
///
/// Lanes scoring >= score_threshold are taken in descending score (ties by
/// lane index). Each contributes its quantized end point, and its start point
/// only when no selected lane i has binarized A_ij = 1. Exact bin duplicates
/// keep their first occurrence. When more than max_prompt_points remain, the
/// lowest-scored lanes are dropped whole, so a lane never contributes a
/// partial set of points.
PromptSet extract_keypoints(const LaneGraph& graph, const CodecConfig& cfg);

/// Fisher-Yates permutation of points (and provenance) drawn from `rng`.
PromptSet shuffle_prompt(PromptSet prompt, Rng& rng);

}  // namespace lgseq
