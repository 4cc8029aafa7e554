#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "lgseq/quantizer.hpp"

namespace lgseq {

/// Keypoints realized so far while reading a sextet stream, with the edge
/// relation between them. Ids here are 0-based; sextets use id + 1.
class KeypointRegistry {
 public:
  std::size_t size() const { return bins_.size(); }
  QuantPoint bins(std::size_t id) const { return bins_[id]; }

  std::optional<std::size_t> find(QuantPoint q) const {
    const auto it = lookup_.find(q);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t add(QuantPoint q) {
    const std::size_t id = bins_.size();
    bins_.push_back(q);
    lookup_.emplace(q, id);
    children_.emplace_back();
    return id;
  }

  void link(std::size_t parent, std::size_t child) { children_[parent].push_back(child); }

  /// True when `to` is reachable from `from` (including from == to).
  bool reaches(std::size_t from, std::size_t to) const {
    if (from == to) return true;
    std::vector<bool> seen(bins_.size(), false);
    std::vector<std::size_t> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto w : children_[v]) {
        if (w == to) return true;
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    return false;
  }

  /// An edge parent -> target keeps the graph acyclic iff target does not reach parent.
  bool can_link(std::size_t parent, std::size_t target) const { return !reaches(target, parent); }

  /// 1-based indices that may serve as the parent of a Clone into `target`.
  std::vector<int> clone_parents(std::size_t target) const {
    std::vector<bool> blocked(bins_.size(), false);
    // Everything reachable from target (target included) would close a cycle.
    std::vector<std::size_t> stack{target};
    blocked[target] = true;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto w : children_[v]) {
        if (!blocked[w]) {
          blocked[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < bins_.size(); ++i) {
      if (!blocked[i]) out.push_back(static_cast<int>(i) + 1);
    }
    return out;
  }

  std::optional<std::size_t> cursor;  // keypoint realized by the previous sextet

 private:
  std::vector<QuantPoint> bins_;
  std::map<QuantPoint, std::size_t> lookup_;
  std::vector<std::vector<std::size_t>> children_;
};

}  // namespace lgseq
