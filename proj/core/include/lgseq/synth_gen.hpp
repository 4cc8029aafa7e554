#pragma once

#include <cstdint>

#include "lgseq/config.hpp"
#include "lgseq/graph_model.hpp"

namespace lgseq {

struct GenSpec {
  std::uint64_t seed = 0;
  int roots = 2;
  int max_depth = 6;
  double fork_prob = 0.3;
  double merge_prob = 0.25;
  double curvature = 2.0;  // max lateral offset of the control from the chord midpoint, meters
  int edge_cap = 100;

  /// Throws Error(SpecInfeasible) for out-of-range fields.
  void validate() const;
};

/// Seeded random keypoint DAG. Every edge runs to strictly larger x, so the
/// graph is acyclic by construction. Keypoints and controls stay inside the
/// BEV range, keypoints occupy distinct bins more than merge_eps apart, and
/// roots + edges never exceed min(edge_cap, max_edges). Throws
/// SpecInfeasible when the roots cannot be placed or exceed that budget.
KeyPointDag generate(const GenSpec& spec, const CodecConfig& cfg);

}  // namespace lgseq
