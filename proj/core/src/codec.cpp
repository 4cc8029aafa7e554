#include "lgseq/codec.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "lgseq/keypoint_registry.hpp"
#include "lgseq/quantizer.hpp"

namespace lgseq {

std::vector<Token> EdgeSequence::tokens_unpadded(const CodecConfig& cfg) const {
  const Vocabulary vocab(cfg);
  std::vector<Token> out;
  out.reserve(sextets.size() * 6 + 1);
  for (const auto& s : sextets) {
    out.insert(out.end(), {s.xb, s.yb, vocab.class_token(s.cls), s.con, s.bxb, s.byb});
  }
  out.push_back(vocab.eos());
  return out;
}

std::vector<Token> EdgeSequence::tokens(const CodecConfig& cfg) const {
  auto out = tokens_unpadded(cfg);
  const auto budget = static_cast<std::size_t>(6 * cfg.max_edges + 1);
  if (out.size() < budget) out.resize(budget, Vocabulary(cfg).pad());
  return out;
}

EdgeSequence encode(const KeyPointDag& dag, const CodecConfig& cfg, EncodeTrace* trace) {
  const Vocabulary vocab(cfg);
  if (const auto violations = validate_dag(dag, cfg.merge_eps); !violations.empty()) {
    std::string what;
    for (const auto& v : violations) what += v.describe() + " ";
    throw Error(ErrorCode::InvalidDag, what);
  }

  const std::size_t k = dag.keypoints.size();
  std::vector<QuantPoint> bins(k);
  std::map<QuantPoint, std::size_t> owner;
  for (std::size_t i = 0; i < k; ++i) {
    bins[i] = quantize(dag.keypoints[i].xy(), cfg);
    if (const auto [it, fresh] = owner.emplace(bins[i], i); !fresh) {
      throw Error(ErrorCode::CloneAmbiguity,
                  "keypoints " + std::to_string(it->second) + " and " + std::to_string(i) +
                      " share bin (" + std::to_string(bins[i].xb) + ", " +
                      std::to_string(bins[i].yb) + "); re-merge with a larger tolerance");
    }
  }

  std::vector<std::vector<std::size_t>> out_edges(k);
  std::vector<std::size_t> indegree(k, 0);
  std::vector<QuantPoint> control_bins(dag.edges.size());
  for (std::size_t e = 0; e < dag.edges.size(); ++e) {
    out_edges[dag.edges[e].src].push_back(e);
    ++indegree[dag.edges[e].dst];
    control_bins[e] = quantize(dag.edges[e].control, cfg);
  }

  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < k; ++i) {
    if (indegree[i] == 0) roots.push_back(i);
  }
  const std::size_t sextet_count = roots.size() + dag.edges.size();
  if (sextet_count > static_cast<std::size_t>(cfg.max_edges)) {
    throw Error(ErrorCode::TooManyEdges, std::to_string(sextet_count) + " sextets (" +
                                             std::to_string(roots.size()) + " roots + " +
                                             std::to_string(dag.edges.size()) +
                                             " edges) exceed budget " +
                                             std::to_string(cfg.max_edges));
  }
  if (k > static_cast<std::size_t>(vocab.max_keypoints())) {
    throw Error(ErrorCode::TooManyKeypoints,
                std::to_string(k) + " keypoints exceed " + std::to_string(vocab.max_keypoints()));
  }

  std::sort(roots.begin(), roots.end(),
            [&](std::size_t a, std::size_t b) { return right_front_before(bins[a], bins[b]); });
  for (auto& edges : out_edges) {
    std::sort(edges.begin(), edges.end(), [&](std::size_t a, std::size_t b) {
      const auto qa = bins[dag.edges[a].dst];
      const auto qb = bins[dag.edges[b].dst];
      if (qa != qb) return right_front_before(qa, qb);
      if (control_bins[a] != control_bins[b]) {
        return right_front_before(control_bins[a], control_bins[b]);
      }
      return a < b;
    });
  }

  EdgeSequence seq;
  seq.sextets.reserve(sextet_count);
  std::vector<int> index(k, 0);  // 1-based emission index, 0 = not yet emitted
  int next_index = 1;
  std::size_t cursor = k;  // k = none
  if (trace) {
    trace->keypoint_order.clear();
    trace->sextet_edge.clear();
  }

  auto emit_new = [&](std::size_t v, KeyClass cls, int con, QuantPoint ctrl, std::size_t edge) {
    seq.sextets.push_back({bins[v].xb, bins[v].yb, cls, con, ctrl.xb, ctrl.yb});
    index[v] = next_index++;
    cursor = v;
    if (trace) {
      trace->keypoint_order.push_back(v);
      trace->sextet_edge.push_back(edge);
    }
  };

  struct Frame {
    std::size_t node;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (const std::size_t root : roots) {
    emit_new(root, KeyClass::Ancestor, 0, bins[root], EncodeTrace::kNoEdge);
    stack.push_back({root, 0});
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next == out_edges[top.node].size()) {
        stack.pop_back();
        continue;
      }
      const std::size_t u = top.node;
      const std::size_t e = out_edges[u][top.next++];
      const std::size_t v = dag.edges[e].dst;
      if (index[v] == 0) {
        if (cursor == u) {
          emit_new(v, KeyClass::Lineal, 0, control_bins[e], e);
        } else {
          emit_new(v, KeyClass::Offshoot, index[u], control_bins[e], e);
        }
        stack.push_back({v, 0});  // invalidates `top`
      } else {
        seq.sextets.push_back({bins[v].xb, bins[v].yb, KeyClass::Clone, index[u],
                               control_bins[e].xb, control_bins[e].yb});
        cursor = v;
        if (trace) trace->sextet_edge.push_back(e);
      }
    }
  }
  return seq;
}

std::string SequenceViolation::describe() const {
  return std::string(error_name(rule)) + "@" + std::to_string(index);
}

namespace {

/// Shared sextet-stream parser. `report` returns normally only in lenient
/// mode; the strict caller's report throws.
class SequenceParser {
 public:
  using Report = std::function<void(const SequenceViolation&)>;

  SequenceParser(const CodecConfig& cfg, Report report)
      : cfg_(cfg), vocab_(cfg), report_(std::move(report)) {}

  KeyPointDag parse(std::span<const Token> tokens) {
    const std::size_t n = tokens.size();
    std::size_t pos = 0;
    std::size_t sextet_no = 0;
    bool saw_eos = false;
    while (pos < n) {
      if (tokens[pos] == vocab_.eos()) {
        saw_eos = true;
        break;
      }
      std::size_t end = pos;
      while (end < n && end < pos + 6 && tokens[end] != vocab_.eos()) ++end;
      if (end - pos < 6) {
        report({pos, ErrorCode::TruncatedSextet});
        pos = end;
        continue;
      }
      if (sextet_no == static_cast<std::size_t>(cfg_.max_edges)) {
        report({pos, ErrorCode::SequenceTooLong});
      }
      ++sextet_no;
      read_sextet(tokens.subspan(pos, 6), pos);
      pos += 6;
    }
    if (!saw_eos) {
      report({n, ErrorCode::MissingEos});
    } else {
      for (std::size_t i = pos + 1; i < n; ++i) {
        if (tokens[i] != vocab_.pad()) {
          report({i, ErrorCode::BadSlotToken});
          break;
        }
      }
    }
    return std::move(dag_);
  }

 private:
  void report(const SequenceViolation& v) { report_(v); }

  bool coord_in(Token t, int bins) const { return t >= 0 && t < bins; }

  void read_sextet(std::span<const Token> s, std::size_t at) {
    const Token cls_tok = s[2];
    if (cls_tok == vocab_.ncls()) {
      // Noise sextet: every non-class slot is a coordinate or PAD; contents ignored.
      for (std::size_t i : {0u, 1u, 3u, 4u, 5u}) {
        if (!vocab_.is_coord(s[i]) && s[i] != vocab_.pad()) {
          report({at + i, ErrorCode::BadSlotToken});
          return;
        }
      }
      return;
    }
    if (!coord_in(s[0], cfg_.x_bins)) return report({at, ErrorCode::BadSlotToken});
    if (!coord_in(s[1], cfg_.y_bins)) return report({at + 1, ErrorCode::BadSlotToken});
    const auto cls = vocab_.key_class(cls_tok);
    if (!cls) return report({at + 2, ErrorCode::BadSlotToken});
    if (!vocab_.is_coord(s[3])) return report({at + 3, ErrorCode::BadSlotToken});
    if (!coord_in(s[4], cfg_.x_bins)) return report({at + 4, ErrorCode::BadSlotToken});
    if (!coord_in(s[5], cfg_.y_bins)) return report({at + 5, ErrorCode::BadSlotToken});

    const QuantPoint bins{s[0], s[1]};
    const QuantPoint ctrl{s[4], s[5]};
    const int con = s[3];
    const int count = static_cast<int>(reg_.size());

    if (*cls == KeyClass::Clone) {
      const auto target = reg_.find(bins);
      if (!target) return report({at, ErrorCode::CloneTargetMissing});
      if (con < 1 || con > count) return report({at + 3, ErrorCode::ConOutOfRange});
      const auto parent = static_cast<std::size_t>(con - 1);
      if (!reg_.can_link(parent, *target)) return report({at + 3, ErrorCode::CloneCreatesCycle});
      add_edge(parent, *target, ctrl);
      reg_.cursor = *target;
      return;
    }

    std::optional<std::size_t> parent;
    switch (*cls) {
      case KeyClass::Ancestor:
        if (con != 0) return report({at + 3, ErrorCode::ConOutOfRange});
        break;
      case KeyClass::Lineal:
        if (!reg_.cursor) return report({at + 2, ErrorCode::LinealWithoutPrevious});
        if (con != 0) return report({at + 3, ErrorCode::ConOutOfRange});
        parent = reg_.cursor;
        break;
      case KeyClass::Offshoot:
        if (con < 1 || con > count) return report({at + 3, ErrorCode::ConOutOfRange});
        parent = static_cast<std::size_t>(con - 1);
        break;
      case KeyClass::Clone:
        break;
    }
    if (reg_.find(bins)) return report({at, ErrorCode::DuplicateKeypoint});
    if (count >= vocab_.max_keypoints()) return report({at + 2, ErrorCode::TooManyKeypoints});

    const std::size_t id = reg_.add(bins);
    const Point2 p = dequantize(bins, cfg_);
    dag_.keypoints.push_back({p.x, p.y, 0.0});
    if (parent) add_edge(*parent, id, ctrl);
    reg_.cursor = id;
  }

  void add_edge(std::size_t parent, std::size_t child, QuantPoint ctrl) {
    reg_.link(parent, child);
    dag_.edges.push_back({parent, child, dequantize(ctrl, cfg_), std::nullopt});
  }

  const CodecConfig& cfg_;
  Vocabulary vocab_;
  Report report_;
  KeypointRegistry reg_;
  KeyPointDag dag_;
};

}  // namespace

KeyPointDag decode(std::span<const Token> tokens, const CodecConfig& cfg) {
  SequenceParser parser(cfg, [](const SequenceViolation& v) {
    throw Error(v.rule, "at token " + std::to_string(v.index));
  });
  return parser.parse(tokens);
}

DecodeResult decode_lenient(std::span<const Token> tokens, const CodecConfig& cfg) {
  DecodeResult result;
  SequenceParser parser(cfg, [&](const SequenceViolation& v) { result.violations.push_back(v); });
  result.dag = parser.parse(tokens);
  return result;
}

EdgeSequence parse_edge_sequence(std::span<const Token> tokens, const CodecConfig& cfg) {
  decode(tokens, cfg);
  const Vocabulary vocab(cfg);
  EdgeSequence seq;
  for (std::size_t i = 0; i + 6 <= tokens.size() && tokens[i] != vocab.eos(); i += 6) {
    const auto cls = vocab.key_class(tokens[i + 2]);
    if (!cls) continue;  // noise sextet
    seq.sextets.push_back({tokens[i], tokens[i + 1], *cls, tokens[i + 3], tokens[i + 4], tokens[i + 5]});
  }
  return seq;
}

std::vector<SequenceViolation> validate_sequence(std::span<const Token> tokens,
                                                 const CodecConfig& cfg) {
  return decode_lenient(tokens, cfg).violations;
}

}  // namespace lgseq
