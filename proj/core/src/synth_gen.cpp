#include "lgseq/synth_gen.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <string>

#include "lgseq/error.hpp"
#include "lgseq/quantizer.hpp"
#include "lgseq/rng.hpp"

namespace lgseq {

void GenSpec::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::SpecInfeasible, what); };
  if (roots < 1) fail("roots must be >= 1");
  if (max_depth < 0) fail("max_depth must be >= 0");
  if (!(fork_prob >= 0.0 && fork_prob <= 1.0)) fail("fork_prob must be in [0, 1]");
  if (!(merge_prob >= 0.0 && merge_prob <= 1.0)) fail("merge_prob must be in [0, 1]");
  if (!(curvature >= 0.0) || !std::isfinite(curvature)) fail("curvature must be >= 0");
  if (edge_cap < 1) fail("edge_cap must be >= 1");
}

namespace {

constexpr int kPlacementTries = 24;
constexpr double kMinStep = 5.0;
constexpr double kMaxStep = 15.0;
constexpr double kMaxLateral = 6.0;
constexpr double kMergeReach = 25.0;

class Builder {
 public:
  Builder(const GenSpec& spec, const CodecConfig& cfg) : spec_(spec), cfg_(cfg), rng_(spec.seed) {
    const double mx = std::max(1.0, cfg.bin_width_x());
    const double my = std::max(1.0, cfg.bin_width_y());
    xlo_ = cfg.x_min + mx;
    xhi_ = cfg.x_max - mx;
    ylo_ = cfg.y_min + my;
    yhi_ = cfg.y_max - my;
    if (!(xlo_ < xhi_) || !(ylo_ < yhi_)) {
      throw Error(ErrorCode::SpecInfeasible, "BEV range too small for generation");
    }
  }

  KeyPointDag build() {
    const int budget = std::min(spec_.edge_cap, cfg_.max_edges);
    if (spec_.roots > budget) {
      throw Error(ErrorCode::SpecInfeasible, std::to_string(spec_.roots) +
                                                 " roots exceed the sextet budget of " +
                                                 std::to_string(budget));
    }
    std::deque<std::size_t> frontier;
    for (int r = 0; r < spec_.roots; ++r) {
      std::optional<std::size_t> placed;
      for (int t = 0; t < kPlacementTries * 4 && !placed; ++t) {
        const double x = rng_.uniform(xlo_, xlo_ + 0.35 * (xhi_ - xlo_));
        const double y = rng_.uniform(ylo_, yhi_);
        placed = try_place({x, y}, 0);
      }
      if (!placed) throw Error(ErrorCode::SpecInfeasible, "cannot place root " + std::to_string(r));
      frontier.push_back(*placed);
    }

    int sextets = spec_.roots;
    while (!frontier.empty() && sextets < budget) {
      const std::size_t u = frontier.front();
      frontier.pop_front();
      if (depth_[u] >= spec_.max_depth) continue;
      const int children = 1 + (rng_.bernoulli(spec_.fork_prob) ? 1 : 0);
      for (int c = 0; c < children && sextets < budget; ++c) {
        if (rng_.bernoulli(spec_.merge_prob)) {
          if (const auto v = merge_candidate(u)) {
            add_edge(u, *v);
            ++sextets;
            continue;
          }
        }
        if (const auto v = grow(u)) {
          add_edge(u, *v);
          ++sextets;
          frontier.push_back(*v);
        }
      }
    }
    return std::move(dag_);
  }

 private:
  std::optional<std::size_t> try_place(Point2 p, int depth) {
    if (p.x < xlo_ || p.x > xhi_ || p.y < ylo_ || p.y > yhi_) return std::nullopt;
    const QuantPoint q = quantize(p, cfg_);
    if (used_bins_.count(q)) return std::nullopt;
    for (const auto& k : dag_.keypoints) {
      if (!(distance(k.xy(), p) > cfg_.merge_eps)) return std::nullopt;
    }
    used_bins_.insert(q);
    dag_.keypoints.push_back({p.x, p.y, 0.0});
    depth_.push_back(depth);
    return dag_.keypoints.size() - 1;
  }

  std::optional<std::size_t> grow(std::size_t u) {
    const Point2 from = dag_.keypoints[u].xy();
    for (int t = 0; t < kPlacementTries; ++t) {
      const double x = from.x + rng_.uniform(kMinStep, kMaxStep);
      if (x > xhi_) return std::nullopt;
      const double y = std::clamp(from.y + rng_.uniform(-kMaxLateral, kMaxLateral), ylo_, yhi_);
      if (auto v = try_place({x, y}, depth_[u] + 1)) return v;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> merge_candidate(std::size_t u) {
    const double ux = dag_.keypoints[u].x;
    std::vector<std::size_t> pool;
    for (std::size_t v = 0; v < dag_.keypoints.size(); ++v) {
      const double vx = dag_.keypoints[v].x;
      if (vx <= ux + 1.0 || vx > ux + kMergeReach) continue;
      const bool linked = std::any_of(dag_.edges.begin(), dag_.edges.end(), [&](const DagEdge& e) {
        return e.src == u && e.dst == v;
      });
      if (!linked) pool.push_back(v);
    }
    if (pool.empty()) return std::nullopt;
    return pool[rng_.uniform_index(pool.size())];
  }

  void add_edge(std::size_t u, std::size_t v) {
    const Point2 a = dag_.keypoints[u].xy();
    const Point2 b = dag_.keypoints[v].xy();
    const Point2 chord = b - a;
    const double len = std::hypot(chord.x, chord.y);
    const Point2 normal{-chord.y / len, chord.x / len};
    const double offset = rng_.uniform(-spec_.curvature, spec_.curvature);
    Point2 c = 0.5 * (a + b) + offset * normal;
    c.x = std::clamp(c.x, xlo_, xhi_);
    c.y = std::clamp(c.y, ylo_, yhi_);
    dag_.edges.push_back({u, v, c, std::nullopt});
  }

  const GenSpec& spec_;
  const CodecConfig& cfg_;
  Rng rng_;
  double xlo_, xhi_, ylo_, yhi_;
  KeyPointDag dag_;
  std::vector<int> depth_;
  std::set<QuantPoint> used_bins_;
};

}  // namespace

KeyPointDag generate(const GenSpec& spec, const CodecConfig& cfg) {
  spec.validate();
  cfg.validate();
  return Builder(spec, cfg).build();
}

}  // namespace lgseq
