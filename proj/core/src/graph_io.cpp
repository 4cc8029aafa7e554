#include "lgseq/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lgseq/error.hpp"

namespace lgseq {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t index(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    bad(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

Point3 point3(const json& j) {
  if (!j.is_array() || j.size() != 3) bad("points must be [x, y, z]");
  return {number(j[0], "x"), number(j[1], "y"), number(j[2], "z")};
}

json point_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

LaneGraph lanegraph_from(const json& doc) {
  if (!doc.is_object() || !doc.contains("lanes") || !doc["lanes"].is_array()) {
    bad("lane graph needs a \"lanes\" array");
  }
  LaneGraph g;
  bool any_score = false;
  for (const auto& lane : doc["lanes"]) {
    if (!lane.is_object() || !lane.contains("points") || !lane["points"].is_array()) {
      bad("each lane needs a \"points\" array");
    }
    Centerline c;
    for (const auto& p : lane["points"]) c.points.push_back(point3(p));
    g.lanes.push_back(std::move(c));
    if (lane.contains("score")) {
      g.scores.resize(g.lanes.size());
      g.scores.back() = number(lane["score"], "score");
      any_score = true;
    }
  }
  if (any_score) g.scores.resize(g.lanes.size());

  const std::size_t m = g.lanes.size();
  const bool sparse = doc.contains("adjacency");
  const bool dense = doc.contains("adjacency_dense");
  if (sparse == dense) bad("exactly one of \"adjacency\" / \"adjacency_dense\" is required");
  g.adjacency.assign(m, std::vector<double>(m, 0.0));
  if (sparse) {
    if (!doc["adjacency"].is_array()) bad("\"adjacency\" must be an array of [i, j] pairs");
    for (const auto& pair : doc["adjacency"]) {
      if (!pair.is_array() || pair.size() != 2) bad("adjacency entries must be [i, j]");
      const auto i = index(pair[0], "adjacency index");
      const auto j = index(pair[1], "adjacency index");
      if (i >= m || j >= m) bad("adjacency index out of range");
      g.adjacency[i][j] = 1.0;
    }
  } else {
    const auto& rows = doc["adjacency_dense"];
    if (!rows.is_array() || rows.size() != m) bad("\"adjacency_dense\" must be m x m");
    for (std::size_t i = 0; i < m; ++i) {
      if (!rows[i].is_array() || rows[i].size() != m) bad("\"adjacency_dense\" must be m x m");
      for (std::size_t j = 0; j < m; ++j) g.adjacency[i][j] = number(rows[i][j], "adjacency");
    }
  }
  return g;
}

KeyPointDag dag_from(const json& doc) {
  if (!doc.is_object() || !doc.contains("keypoints") || !doc["keypoints"].is_array() ||
      !doc.contains("edges") || !doc["edges"].is_array()) {
    bad("DAG needs \"keypoints\" and \"edges\" arrays");
  }
  KeyPointDag d;
  for (const auto& p : doc["keypoints"]) d.keypoints.push_back(point3(p));
  for (const auto& e : doc["edges"]) {
    if (!e.is_object() || !e.contains("src") || !e.contains("dst") || !e.contains("control")) {
      bad("edges need src, dst and control");
    }
    DagEdge edge;
    edge.src = index(e["src"], "src");
    edge.dst = index(e["dst"], "dst");
    const auto& c = e["control"];
    if (!c.is_array() || c.size() != 2) bad("control must be [x, y]");
    edge.control = {number(c[0], "control x"), number(c[1], "control y")};
    if (e.contains("score")) edge.score = number(e["score"], "score");
    d.edges.push_back(edge);
  }
  return d;
}

json lanegraph_json(const LaneGraph& g) {
  json lanes = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    json pts = json::array();
    for (const auto& p : g.lanes[i].points) pts.push_back(point_json(p));
    json lane = {{"points", std::move(pts)}};
    if (i < g.scores.size() && g.scores[i]) lane["score"] = *g.scores[i];
    lanes.push_back(std::move(lane));
  }
  bool binary = true;
  for (const auto& row : g.adjacency) {
    for (double a : row) binary &= (a == 0.0 || a == 1.0);
  }
  json out = {{"lanes", std::move(lanes)}};
  if (binary) {
    json pairs = json::array();
    for (std::size_t i = 0; i < g.adjacency.size(); ++i) {
      for (std::size_t j = 0; j < g.adjacency[i].size(); ++j) {
        if (g.adjacency[i][j] == 1.0) pairs.push_back(json::array({i, j}));
      }
    }
    out["adjacency"] = std::move(pairs);
  } else {
    out["adjacency_dense"] = g.adjacency;
  }
  return out;
}

json dag_json(const KeyPointDag& d) {
  json kps = json::array();
  for (const auto& p : d.keypoints) kps.push_back(point_json(p));
  json edges = json::array();
  for (const auto& e : d.edges) {
    json je = {{"src", e.src}, {"dst", e.dst}, {"control", json::array({e.control.x, e.control.y})}};
    if (e.score) je["score"] = *e.score;
    edges.push_back(std::move(je));
  }
  return {{"keypoints", std::move(kps)}, {"edges", std::move(edges)}};
}

GraphDocument document_from(const json& doc) {
  GraphDocument out;
  if (doc.is_object() && doc.contains("lanes")) {
    out.kind = GraphDocument::Kind::LaneGraph;
    out.lanes = lanegraph_from(doc);
  } else if (doc.is_object() && doc.contains("keypoints")) {
    out.kind = GraphDocument::Kind::Dag;
    out.dag = dag_from(doc);
  } else {
    bad("document is neither a lane graph (\"lanes\") nor a DAG (\"keypoints\")");
  }
  return out;
}

}  // namespace

LaneGraph lanegraph_from_json(std::string_view text) { return lanegraph_from(parse(text)); }
std::string lanegraph_to_json(const LaneGraph& graph) { return lanegraph_json(graph).dump(); }

KeyPointDag dag_from_json(std::string_view text) { return dag_from(parse(text)); }
std::string dag_to_json(const KeyPointDag& dag) { return dag_json(dag).dump(); }

std::vector<GraphDocument> graph_documents_from_json(std::string_view text) {
  const json doc = parse(text);
  std::vector<GraphDocument> out;
  if (doc.is_array()) {
    for (const auto& d : doc) out.push_back(document_from(d));
  } else {
    out.push_back(document_from(doc));
  }
  return out;
}

std::string report_to_json(const EvalReport& report) {
  json thresholds = json::array();
  for (const auto& t : report.thresholds) {
    thresholds.push_back({{"threshold", t.threshold}, {"det", t.det}, {"top", t.top}});
  }
  json out = {{"det", report.det},
              {"top", report.top},
              {"ols_star", report.ols_star},
              {"endpoint_gap_mean", report.endpoint_gap_mean},
              {"thresholds", std::move(thresholds)}};
  return out.dump(2);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

}  // namespace lgseq
