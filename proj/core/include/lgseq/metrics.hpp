#pragma once

#include <array>
#include <span>
#include <vector>

#include "lgseq/config.hpp"
#include "lgseq/geometry.hpp"
#include "lgseq/graph_model.hpp"

namespace lgseq {

/// Fréchet matching thresholds in meters.
inline constexpr std::array<double, 3> kMatchThresholds = {1.0, 2.0, 3.0};

struct ThresholdScore {
  double threshold = 0.0;
  double det = 0.0;  // average precision at this threshold
  double top = 0.0;  // connectivity F1 under this threshold's matching
};

struct EvalReport {
  double det = 0.0;
  double top = 0.0;
  double ols_star = 0.0;  // sqrt(det * top)
  double endpoint_gap_mean = 0.0;
  std::vector<ThresholdScore> thresholds;
};

/// Discrete Fréchet distance. Both polylines need at least one point.
double frechet(std::span<const Point3> a, std::span<const Point3> b);

/// Desk-scale lane-graph score. Not benchmark-exact: matching is greedy in
/// descending prediction score, each prediction taking the closest unmatched
/// ground-truth lane within the threshold.
///
/// DET averages AP over kMatchThresholds. TOP averages, over the same
/// matchings, the F1 of predicted connections (binarized A_ij = 1) whose
/// endpoints both match ground-truth lanes that are connected. Empty
/// predictions score 0; when neither side has connections TOP is 1.
/// endpoint_gap_mean is the mean end-to-start distance over predicted
/// connections (0 when there are none).
EvalReport evaluate(const LaneGraph& pred, const LaneGraph& gt, const CodecConfig& cfg);

}  // namespace lgseq
