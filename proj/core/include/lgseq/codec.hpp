#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "lgseq/config.hpp"
#include "lgseq/error.hpp"
#include "lgseq/graph_model.hpp"
#include "lgseq/vocab.hpp"

namespace lgseq {

/// One keypoint and its incoming curve: [xb, yb, cls, con, bxb, byb].
struct EdgeSextet {
  int xb = 0;
  int yb = 0;
  KeyClass cls = KeyClass::Ancestor;
  int con = 0;  // 1-based parent index for Offshoot / Clone, else 0
  int bxb = 0;
  int byb = 0;

  friend bool operator==(const EdgeSextet&, const EdgeSextet&) = default;
};

struct EdgeSequence {
  std::vector<EdgeSextet> sextets;

  /// Flattened ids, EOS, then PAD up to 6 * max_edges + 1 tokens.
  std::vector<Token> tokens(const CodecConfig& cfg) const;
  /// Flattened ids followed by EOS, without padding.
  std::vector<Token> tokens_unpadded(const CodecConfig& cfg) const;
};

/// Where each emitted item came from in the source DAG.
struct EncodeTrace {
  static constexpr std::size_t kNoEdge = std::numeric_limits<std::size_t>::max();
  /// keypoint_order[k] = source keypoint id realized as decoded keypoint k.
  std::vector<std::size_t> keypoint_order;
  /// sextet_edge[s] = source edge id realized by sextet s (kNoEdge for Ancestor).
  std::vector<std::size_t> sextet_edge;
};

/// Canonical serialization of a keypoint DAG.
///
/// Roots are visited right-front first (descending x bin, then ascending y
/// bin); each node's outgoing edges are explored depth-first in the same
/// order of their target keypoints (ties by control bins, then edge id).
/// New keypoints get indices 1, 2, 3, ... in emission order; Clone sextets
/// consume no index.
///
/// Throws InvalidDag (validate_dag not empty), TooManyEdges (roots + edges >
/// max_edges), TooManyKeypoints, CloneAmbiguity (two keypoints share a bin).
EdgeSequence encode(const KeyPointDag& dag, const CodecConfig& cfg, EncodeTrace* trace = nullptr);

struct SequenceViolation {
  std::size_t index = 0;  // offending token position
  ErrorCode rule = ErrorCode::BadSlotToken;

  std::string describe() const;
  friend bool operator==(const SequenceViolation&, const SequenceViolation&) = default;
};

struct DecodeResult {
  KeyPointDag dag;
  std::vector<SequenceViolation> violations;
};

/// Strict inverse of encode(): reads sextets until EOS, drops noise-class
/// sextets, places keypoints and controls at bin centers. The first
/// malformation throws Error carrying its rule and token index.
KeyPointDag decode(std::span<const Token> tokens, const CodecConfig& cfg);

/// Same parse, but malformed sextets are skipped and reported.
DecodeResult decode_lenient(std::span<const Token> tokens, const CodecConfig& cfg);

/// The real (non-noise) sextets of a strictly valid token stream; throws like decode().
EdgeSequence parse_edge_sequence(std::span<const Token> tokens, const CodecConfig& cfg);

/// Empty iff decode() succeeds.
std::vector<SequenceViolation> validate_sequence(std::span<const Token> tokens,
                                                 const CodecConfig& cfg);

}  // namespace lgseq
