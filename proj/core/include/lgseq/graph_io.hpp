#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lgseq/graph_model.hpp"
#include "lgseq/metrics.hpp"

namespace lgseq {

// LaneGraph JSON:
//   {"lanes": [{"points": [[x,y,z], ...], "score": s?}, ...],
//    "adjacency": [[i,j], ...]          (sparse, A_ij = 1)
//    | "adjacency_dense": [[...], ...]}  (m x m numbers)
// Exactly one adjacency key must be present.
//
// DAG JSON:
//   {"keypoints": [[x,y,z], ...],
//    "edges": [{"src": i, "dst": j, "control": [x,y], "score": s?}, ...]}

LaneGraph lanegraph_from_json(std::string_view text);
/// Sparse "adjacency" when every entry is 0 or 1, "adjacency_dense" otherwise.
std::string lanegraph_to_json(const LaneGraph& graph);

KeyPointDag dag_from_json(std::string_view text);
std::string dag_to_json(const KeyPointDag& dag);

/// A graph file holds one document or a JSON array of documents, each either
/// a LaneGraph or a DAG (told apart by their keys).
struct GraphDocument {
  enum class Kind { LaneGraph, Dag };
  Kind kind = Kind::Dag;
  LaneGraph lanes;
  KeyPointDag dag;
};

std::vector<GraphDocument> graph_documents_from_json(std::string_view text);

/// Fixed keys: det, top, ols_star, endpoint_gap_mean, thresholds.
std::string report_to_json(const EvalReport& report);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace lgseq
