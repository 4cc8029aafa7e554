#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lgseq/config.hpp"
#include "lgseq/geometry.hpp"

namespace lgseq {

/// Ordered points from lane start to lane end.
struct Centerline {
  std::vector<Point3> points;
};

/// Centerlines plus an m x m adjacency. adjacency[i][j] is the (possibly
/// probabilistic) belief that lane i's end point feeds lane j's start point.
struct LaneGraph {
  std::vector<Centerline> lanes;
  std::vector<std::vector<double>> adjacency;
  std::vector<std::optional<double>> scores;  // empty, or one entry per lane

  std::size_t size() const { return lanes.size(); }
  double score(std::size_t lane) const {
    return lane < scores.size() && scores[lane] ? *scores[lane] : 1.0;
  }
  bool connected(std::size_t i, std::size_t j, double threshold) const {
    return adjacency[i][j] >= threshold;
  }

  /// Throws Error(InvalidGraph) if shapes, ranges or the zero diagonal are violated.
  void check_shape() const;
};

struct DagEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  Point2 control;
  std::optional<double> score;
};

/// Merged endpoints (keypoints) with one quadratic-Bezier edge per lane.
struct KeyPointDag {
  std::vector<Point3> keypoints;
  std::vector<DagEdge> edges;
};

/// Converts a lane graph into its merged keypoint form.
///
/// Endpoint merging is union-find over lane endpoints: lane i's end joins lane
/// j's start whenever the binarized adjacency says A_ij = 1 (the gap must then
/// be <= merge_eps, else InconsistentAdjacency). Endpoints closer than
/// merge_eps are joined as well, so coincident fork starts and merge ends
/// become a single keypoint. A merged keypoint sits at the mean of its members.
/// Each lane becomes exactly one edge whose control point is the Bezier fit of
/// the lane's points.
///
/// Throws CycleDetected (directed cycle or a lane collapsing to a point),
/// InconsistentAdjacency, InvalidGraph, NonFiniteCoordinate.
KeyPointDag lanegraph_to_dag(const LaneGraph& graph, const CodecConfig& cfg);

/// One centerline of cfg.centerline_points per edge, sampled uniformly in the
/// curve parameter; A_ij = 1 exactly when edge i's target is edge j's source.
LaneGraph dag_to_lanegraph(const KeyPointDag& dag, const CodecConfig& cfg);

struct DagViolation {
  enum class Rule { NonFinite, EdgeOutOfRange, SelfLoop, Cycle, TooClose };
  Rule rule;
  std::size_t a = 0;  // keypoint or edge id, depending on the rule
  std::size_t b = 0;

  std::string describe() const;
  friend bool operator==(const DagViolation&, const DagViolation&) = default;
};

/// Empty iff every KeyPointDag invariant holds under merge tolerance `eps`.
std::vector<DagViolation> validate_dag(const KeyPointDag& dag, double eps);

/// Topological order of keypoint ids, or nullopt when the edge relation has a cycle.
std::optional<std::vector<std::size_t>> topological_order(const KeyPointDag& dag);

/// Keypoint correspondence `map[i]` = id in `b` of keypoint i of `a`, by
/// nearest neighbour within `tol` (xy). nullopt unless a bijection results.
std::optional<std::vector<std::size_t>> match_keypoints(const KeyPointDag& a,
                                                        const KeyPointDag& b, double tol);

struct DagComparison {
  bool topology_equal = false;
  /// Largest per-axis |dx|, |dy| over matched keypoints and edge controls.
  double max_deviation = 0.0;
};

/// Compares two DAGs under a keypoint correspondence (a-id -> b-id). Edges are
/// compared as multisets of mapped (src, dst); parallel edges are paired by
/// nearest control point.
DagComparison compare_dags(const KeyPointDag& a, const KeyPointDag& b,
                           const std::vector<std::size_t>& keypoint_map);

}  // namespace lgseq
