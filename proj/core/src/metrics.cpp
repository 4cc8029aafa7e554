#include "lgseq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <set>

#include "lgseq/error.hpp"

namespace lgseq {

double frechet(std::span<const Point3> a, std::span<const Point3> b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::InvalidGraph, "Frechet distance of an empty polyline");
  }
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<double> prev(m), cur(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = distance(a[i], b[j]);
      double reach;
      if (i == 0 && j == 0) {
        reach = d;
      } else if (i == 0) {
        reach = std::max(cur[j - 1], d);
      } else if (j == 0) {
        reach = std::max(prev[0], d);
      } else {
        reach = std::max(std::min({prev[j], prev[j - 1], cur[j - 1]}), d);
      }
      cur[j] = reach;
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

namespace {

using Matching = std::vector<std::optional<std::size_t>>;  // pred lane -> gt lane

double average_precision(const std::vector<bool>& tp_in_rank_order, std::size_t num_gt) {
  if (num_gt == 0 || tp_in_rank_order.empty()) return 0.0;
  const std::size_t n = tp_in_rank_order.size();
  std::vector<double> precision(n), recall(n);
  std::size_t tp = 0;
  for (std::size_t k = 0; k < n; ++k) {
    tp += tp_in_rank_order[k] ? 1 : 0;
    precision[k] = static_cast<double>(tp) / static_cast<double>(k + 1);
    recall[k] = static_cast<double>(tp) / static_cast<double>(num_gt);
  }
  // All-point interpolation: precision envelope integrated over recall steps.
  for (std::size_t k = n - 1; k > 0; --k) precision[k - 1] = std::max(precision[k - 1], precision[k]);
  double ap = 0.0;
  double last_recall = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (recall[k] > last_recall) {
      ap += (recall[k] - last_recall) * precision[k];
      last_recall = recall[k];
    }
  }
  return ap;
}

double connectivity_f1(const LaneGraph& pred, const LaneGraph& gt, const Matching& match,
                       double adj_threshold) {
  std::size_t predicted = 0, hits = 0, truth = 0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    for (std::size_t j = 0; j < gt.size(); ++j) {
      if (i != j && gt.connected(i, j, adj_threshold)) ++truth;
    }
  }
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = 0; j < pred.size(); ++j) {
      if (i == j || !pred.connected(i, j, adj_threshold)) continue;
      ++predicted;
      if (match[i] && match[j] && gt.connected(*match[i], *match[j], adj_threshold)) ++hits;
    }
  }
  if (predicted == 0 && truth == 0) return 1.0;
  if (hits == 0) return 0.0;
  const double p = static_cast<double>(hits) / static_cast<double>(predicted);
  const double r = static_cast<double>(hits) / static_cast<double>(truth);
  return 2.0 * p * r / (p + r);
}

}  // namespace

EvalReport evaluate(const LaneGraph& pred, const LaneGraph& gt, const CodecConfig& cfg) {
  pred.check_shape();
  gt.check_shape();
  EvalReport report;

  std::size_t gap_pairs = 0;
  double gap_sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = 0; j < pred.size(); ++j) {
      if (i == j || !pred.connected(i, j, cfg.adjacency_threshold)) continue;
      gap_sum += distance(pred.lanes[i].points.back(), pred.lanes[j].points.front());
      ++gap_pairs;
    }
  }
  report.endpoint_gap_mean = gap_pairs == 0 ? 0.0 : gap_sum / static_cast<double>(gap_pairs);

  std::vector<std::size_t> ranked(pred.size());
  std::iota(ranked.begin(), ranked.end(), 0);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](std::size_t a, std::size_t b) { return pred.score(a) > pred.score(b); });

  std::vector<std::vector<double>> dist(pred.size(), std::vector<double>(gt.size()));
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = 0; j < gt.size(); ++j) {
      dist[i][j] = frechet(pred.lanes[i].points, gt.lanes[j].points);
    }
  }

  for (const double thr : kMatchThresholds) {
    ThresholdScore ts;
    ts.threshold = thr;
    if (!pred.lanes.empty()) {
      Matching match(pred.size());
      std::vector<bool> taken(gt.size(), false);
      std::vector<bool> tp;
      tp.reserve(ranked.size());
      for (const std::size_t i : ranked) {
        std::optional<std::size_t> best;
        for (std::size_t j = 0; j < gt.size(); ++j) {
          if (taken[j] || dist[i][j] > thr) continue;
          if (!best || dist[i][j] < dist[i][*best]) best = j;
        }
        if (best) {
          taken[*best] = true;
          match[i] = best;
        }
        tp.push_back(best.has_value());
      }
      ts.det = average_precision(tp, gt.size());
      ts.top = connectivity_f1(pred, gt, match, cfg.adjacency_threshold);
    }
    report.det += ts.det;
    report.top += ts.top;
    report.thresholds.push_back(ts);
  }
  report.det /= static_cast<double>(kMatchThresholds.size());
  report.top /= static_cast<double>(kMatchThresholds.size());
  report.ols_star = std::clamp(std::sqrt(report.det * report.top), 0.0, 1.0);
  return report;
}

}  // namespace lgseq
