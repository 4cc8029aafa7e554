#include "lgseq/graph_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <utility>

#include "lgseq/bezier.hpp"
#include "lgseq/error.hpp"

namespace lgseq {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller root wins, which keeps the final labelling order-independent.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

bool within(Point2 a, Point2 b, double eps) {
  const double d = distance(a, b);
  return d == 0.0 || d < eps;
}

std::string pair_str(std::size_t a, std::size_t b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

void LaneGraph::check_shape() const {
  const std::size_t m = lanes.size();
  if (adjacency.size() != m) {
    throw Error(ErrorCode::InvalidGraph, "adjacency has " + std::to_string(adjacency.size()) +
                                             " rows for " + std::to_string(m) + " lanes");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (adjacency[i].size() != m) {
      throw Error(ErrorCode::InvalidGraph, "adjacency row " + std::to_string(i) + " has wrong length");
    }
    for (std::size_t j = 0; j < m; ++j) {
      const double a = adjacency[i][j];
      if (!(a >= 0.0 && a <= 1.0)) {
        throw Error(ErrorCode::InvalidGraph, "adjacency entry " + pair_str(i, j) + " outside [0, 1]");
      }
    }
    if (adjacency[i][i] != 0.0) {
      throw Error(ErrorCode::InvalidGraph, "adjacency diagonal nonzero at lane " + std::to_string(i));
    }
    if (lanes[i].points.size() < 2) {
      throw Error(ErrorCode::InvalidGraph, "lane " + std::to_string(i) + " has fewer than 2 points");
    }
    for (const auto& p : lanes[i].points) {
      if (!is_finite(p)) {
        throw Error(ErrorCode::NonFiniteCoordinate, "lane " + std::to_string(i));
      }
    }
  }
  if (!scores.empty()) {
    if (scores.size() != m) throw Error(ErrorCode::InvalidGraph, "scores length mismatch");
    for (const auto& s : scores) {
      if (s && !(*s >= 0.0 && *s <= 1.0)) {
        throw Error(ErrorCode::InvalidGraph, "lane score outside [0, 1]");
      }
    }
  }
}

KeyPointDag lanegraph_to_dag(const LaneGraph& graph, const CodecConfig& cfg) {
  graph.check_shape();
  const std::size_t m = graph.size();
  const double eps = cfg.merge_eps;

  // Endpoint node 2i is lane i's start, 2i+1 its end.
  auto endpoint = [&](std::size_t node) -> const Point3& {
    const auto& pts = graph.lanes[node / 2].points;
    return node % 2 == 0 ? pts.front() : pts.back();
  };

  UnionFind uf(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!graph.connected(i, j, cfg.adjacency_threshold)) continue;
      const double gap = distance(endpoint(2 * i + 1).xy(), endpoint(2 * j).xy());
      if (gap > eps) {
        throw Error(ErrorCode::InconsistentAdjacency,
                    "lanes " + pair_str(i, j) + " connected but gap " + std::to_string(gap) +
                        " m exceeds merge tolerance");
      }
      uf.unite(2 * i + 1, 2 * j);
    }
  }
  for (std::size_t a = 0; a < 2 * m; ++a) {
    for (std::size_t b = a + 1; b < 2 * m; ++b) {
      if (within(endpoint(a).xy(), endpoint(b).xy(), eps)) uf.unite(a, b);
    }
  }

  // Cluster means can drift closer than eps to a neighbouring cluster; fold
  // those together until the keypoint set is eps-separated.
  std::vector<std::size_t> roots;
  std::vector<Point3> means;
  for (;;) {
    std::map<std::size_t, std::pair<Point3, std::size_t>> acc;
    for (std::size_t n = 0; n < 2 * m; ++n) {
      auto& [sum, count] = acc[uf.find(n)];
      const auto& p = endpoint(n);
      sum.x += p.x;
      sum.y += p.y;
      sum.z += p.z;
      ++count;
    }
    roots.clear();
    means.clear();
    for (const auto& [root, sc] : acc) {
      const double k = static_cast<double>(sc.second);
      roots.push_back(root);
      means.push_back({sc.first.x / k, sc.first.y / k, sc.first.z / k});
    }
    bool merged = false;
    for (std::size_t a = 0; a < means.size(); ++a) {
      for (std::size_t b = a + 1; b < means.size(); ++b) {
        if (within(means[a].xy(), means[b].xy(), eps)) merged |= uf.unite(roots[a], roots[b]);
      }
    }
    if (!merged) break;
  }

  KeyPointDag dag;
  std::map<std::size_t, std::size_t> id_of_root;
  for (std::size_t n = 0; n < 2 * m; ++n) {
    const std::size_t root = uf.find(n);
    if (id_of_root.count(root) != 0) continue;
    id_of_root[root] = dag.keypoints.size();
    const auto it = std::lower_bound(roots.begin(), roots.end(), root);
    dag.keypoints.push_back(means[static_cast<std::size_t>(it - roots.begin())]);
  }

  dag.edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    DagEdge e;
    e.src = id_of_root.at(uf.find(2 * i));
    e.dst = id_of_root.at(uf.find(2 * i + 1));
    if (e.src == e.dst) {
      throw Error(ErrorCode::CycleDetected,
                  "lane " + std::to_string(i) + " starts and ends at the same keypoint");
    }
    const auto& pts = graph.lanes[i].points;
    const Point2 p0 = dag.keypoints[e.src].xy();
    const Point2 p1 = dag.keypoints[e.dst].xy();
    if (pts.size() < 3) {
      e.control = 0.5 * (p0 + p1);
    } else {
      std::vector<Point2> xy;
      xy.reserve(pts.size());
      for (const auto& p : pts) xy.push_back(p.xy());
      xy.front() = p0;
      xy.back() = p1;
      e.control = fit_control_point(xy).c;
    }
    if (i < graph.scores.size()) e.score = graph.scores[i];
    dag.edges.push_back(e);
  }

  if (!topological_order(dag)) {
    throw Error(ErrorCode::CycleDetected, "merged lane graph has a directed cycle");
  }
  return dag;
}

LaneGraph dag_to_lanegraph(const KeyPointDag& dag, const CodecConfig& cfg) {
  const std::size_t m = dag.edges.size();
  const int n = cfg.centerline_points;
  LaneGraph g;
  g.lanes.reserve(m);
  g.adjacency.assign(m, std::vector<double>(m, 0.0));

  bool any_score = false;
  for (const auto& e : dag.edges) any_score |= e.score.has_value();
  if (any_score) g.scores.resize(m);

  for (std::size_t i = 0; i < m; ++i) {
    const auto& e = dag.edges[i];
    const Point3& a = dag.keypoints[e.src];
    const Point3& b = dag.keypoints[e.dst];
    const auto xy = sample_curve(EdgeCurve{a.xy(), e.control, b.xy()}, n);
    Centerline lane;
    lane.points.reserve(xy.size());
    for (std::size_t k = 0; k < xy.size(); ++k) {
      const double t = static_cast<double>(k) / (n - 1);
      const double z = k + 1 == xy.size() ? b.z : a.z + (b.z - a.z) * t;
      lane.points.push_back({xy[k].x, xy[k].y, z});
    }
    g.lanes.push_back(std::move(lane));
    if (any_score) g.scores[i] = e.score;
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && e.dst == dag.edges[j].src) g.adjacency[i][j] = 1.0;
    }
  }
  return g;
}

std::string DagViolation::describe() const {
  switch (rule) {
    case Rule::NonFinite: return "NonFinite(" + std::to_string(a) + ")";
    case Rule::EdgeOutOfRange: return "EdgeOutOfRange(" + std::to_string(a) + ")";
    case Rule::SelfLoop: return "SelfLoop(" + std::to_string(a) + ")";
    case Rule::Cycle: return "Cycle(" + std::to_string(a) + ")";
    case Rule::TooClose: return "TooClose(" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  return "Unknown";
}

std::optional<std::vector<std::size_t>> topological_order(const KeyPointDag& dag) {
  const std::size_t k = dag.keypoints.size();
  std::vector<std::size_t> indegree(k, 0);
  std::vector<std::vector<std::size_t>> out(k);
  for (const auto& e : dag.edges) {
    if (e.src >= k || e.dst >= k) return std::nullopt;
    out[e.src].push_back(e.dst);
    ++indegree[e.dst];
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < k; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<std::size_t> order;
  order.reserve(k);
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::size_t w : out[v]) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (order.size() != k) return std::nullopt;
  return order;
}

std::vector<DagViolation> validate_dag(const KeyPointDag& dag, double eps) {
  using Rule = DagViolation::Rule;
  std::vector<DagViolation> out;
  const std::size_t k = dag.keypoints.size();

  for (std::size_t i = 0; i < k; ++i) {
    if (!is_finite(dag.keypoints[i])) out.push_back({Rule::NonFinite, i, 0});
  }

  KeyPointDag proper;  // edges that are in range and not self-loops
  proper.keypoints = dag.keypoints;
  for (std::size_t ei = 0; ei < dag.edges.size(); ++ei) {
    const auto& e = dag.edges[ei];
    if (e.src >= k || e.dst >= k) {
      out.push_back({Rule::EdgeOutOfRange, ei, 0});
    } else if (e.src == e.dst) {
      out.push_back({Rule::SelfLoop, e.src, 0});
    } else {
      if (!is_finite(e.control)) out.push_back({Rule::NonFinite, e.src, e.dst});
      proper.edges.push_back(e);
    }
  }

  if (!topological_order(proper)) {
    // Report the keypoints left over by Kahn's algorithm: exactly those on or
    // downstream of a cycle. Name the smallest one.
    std::vector<std::size_t> indegree(k, 0);
    std::vector<std::vector<std::size_t>> outs(k);
    for (const auto& e : proper.edges) {
      outs[e.src].push_back(e.dst);
      ++indegree[e.dst];
    }
    std::vector<std::size_t> stack;
    for (std::size_t v = 0; v < k; ++v) {
      if (indegree[v] == 0) stack.push_back(v);
    }
    std::vector<bool> done(k, false);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      done[v] = true;
      for (auto w : outs[v]) {
        if (--indegree[w] == 0) stack.push_back(w);
      }
    }
    for (std::size_t v = 0; v < k; ++v) {
      if (!done[v]) {
        out.push_back({Rule::Cycle, v, 0});
        break;
      }
    }
  }

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!is_finite(dag.keypoints[i]) || !is_finite(dag.keypoints[j])) continue;
      if (distance(dag.keypoints[i].xy(), dag.keypoints[j].xy()) < eps) {
        out.push_back({Rule::TooClose, i, j});
      }
    }
  }
  return out;
}

std::optional<std::vector<std::size_t>> match_keypoints(const KeyPointDag& a,
                                                        const KeyPointDag& b, double tol) {
  if (a.keypoints.size() != b.keypoints.size()) return std::nullopt;
  std::vector<std::size_t> map(a.keypoints.size());
  std::vector<bool> used(b.keypoints.size(), false);
  for (std::size_t i = 0; i < a.keypoints.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < b.keypoints.size(); ++j) {
      const double d = distance(a.keypoints[i].xy(), b.keypoints[j].xy());
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    if (!(best <= tol) || used[best_j]) return std::nullopt;
    used[best_j] = true;
    map[i] = best_j;
  }
  return map;
}

DagComparison compare_dags(const KeyPointDag& a, const KeyPointDag& b,
                           const std::vector<std::size_t>& keypoint_map) {
  DagComparison cmp;
  if (a.keypoints.size() != b.keypoints.size() || a.edges.size() != b.edges.size() ||
      keypoint_map.size() != a.keypoints.size()) {
    return cmp;
  }
  auto note = [&](Point2 p, Point2 q) {
    cmp.max_deviation = std::max({cmp.max_deviation, std::abs(p.x - q.x), std::abs(p.y - q.y)});
  };
  for (std::size_t i = 0; i < a.keypoints.size(); ++i) {
    note(a.keypoints[i].xy(), b.keypoints.at(keypoint_map[i]).xy());
  }

  std::map<std::pair<std::size_t, std::size_t>, std::vector<Point2>> a_edges;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Point2>> b_edges;
  for (const auto& e : a.edges) {
    if (e.src >= keypoint_map.size() || e.dst >= keypoint_map.size()) return cmp;
    a_edges[{keypoint_map[e.src], keypoint_map[e.dst]}].push_back(e.control);
  }
  for (const auto& e : b.edges) b_edges[{e.src, e.dst}].push_back(e.control);

  if (a_edges.size() != b_edges.size()) return cmp;
  for (auto& [key, controls] : a_edges) {
    auto it = b_edges.find(key);
    if (it == b_edges.end() || it->second.size() != controls.size()) return cmp;
    auto pool = it->second;
    for (const auto& c : controls) {
      auto best = std::min_element(pool.begin(), pool.end(), [&](Point2 p, Point2 q) {
        return distance(p, c) < distance(q, c);
      });
      note(c, *best);
      pool.erase(best);
    }
  }
  cmp.topology_equal = true;
  return cmp;
}

}  // namespace lgseq
