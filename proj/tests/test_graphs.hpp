#pragma once

#include <cmath>
#include <vector>

#include "lgseq/graph_model.hpp"
#include "lgseq/rng.hpp"

namespace lgseq::testing {

inline Centerline straight_lane(Point2 a, Point2 b, int n = 5) {
  Centerline c;
  for (int k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / (n - 1);
    c.points.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), 0.0});
  }
  return c;
}

inline LaneGraph lanes_with(std::vector<Centerline> lanes,
                            std::vector<std::pair<std::size_t, std::size_t>> links = {}) {
  LaneGraph g;
  g.lanes = std::move(lanes);
  g.adjacency.assign(g.lanes.size(), std::vector<double>(g.lanes.size(), 0.0));
  for (auto [i, j] : links) g.adjacency[i][j] = 1.0;
  return g;
}

inline DagEdge straight_edge(const KeyPointDag& d, std::size_t s, std::size_t t) {
  const auto& a = d.keypoints[s];
  const auto& b = d.keypoints[t];
  return {s, t, {(a.x + b.x) / 2, (a.y + b.y) / 2}, std::nullopt};
}

/// m straight lanes with endpoints on a coarse lattice (so bins repeat and
/// lanes chain up often), sparse soft adjacency and mostly-present scores.
inline LaneGraph random_lanegraph(Rng& rng, std::size_t m) {
  auto lattice = [&] {
    return Point2{-40.0 + 8.0 * static_cast<double>(rng.uniform_index(10)),
                  -20.0 + 8.0 * static_cast<double>(rng.uniform_index(5))};
  };
  std::vector<Centerline> lanes;
  for (std::size_t i = 0; i < m; ++i) lanes.push_back(straight_lane(lattice(), lattice(), 3));
  LaneGraph g = lanes_with(std::move(lanes));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && rng.bernoulli(0.15)) g.adjacency[i][j] = rng.uniform01();
    }
    if (rng.bernoulli(0.8)) {
      g.scores.emplace_back(std::round(rng.uniform01() * 20) / 20);
    } else {
      g.scores.emplace_back(std::nullopt);
    }
  }
  return g;
}

}  // namespace lgseq::testing
