#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>

#include "lgseq/config.hpp"

namespace lgseq {

using Token = std::int32_t;

/// Keypoint classes carried in a sextet's class slot.
enum class KeyClass : std::uint8_t {
  Ancestor,  // new root keypoint, no incoming edge
  Lineal,    // new keypoint continuing from the previously realized keypoint
  Offshoot,  // new keypoint branching from keypoint #con
  Clone,     // edge from keypoint #con into an already realized keypoint
};

/// Token id layout for a config. Coordinate ids are slot-typed: the same id
/// is an x bin, a y bin, or a keypoint index depending on its sextet slot.
///
///   [0, coord_count)       coordinates / con indices
///   ancestor..clone        the four keypoint classes
///   ncls                   noise class
///   start, eok, eos, pad   specials
struct Vocabulary {
  Token coord_count = 0;

  explicit Vocabulary(const CodecConfig& cfg) : coord_count(std::max(cfg.x_bins, cfg.y_bins)) {}

  Token ancestor() const { return coord_count; }
  Token lineal() const { return coord_count + 1; }
  Token offshoot() const { return coord_count + 2; }
  Token clone() const { return coord_count + 3; }
  Token ncls() const { return coord_count + 4; }
  Token start() const { return coord_count + 5; }
  Token eok() const { return coord_count + 6; }
  Token eos() const { return coord_count + 7; }
  Token pad() const { return coord_count + 8; }
  Token size() const { return coord_count + 9; }

  /// Largest 1-based keypoint index a con slot can carry.
  int max_keypoints() const { return coord_count - 1; }

  bool is_coord(Token t) const { return t >= 0 && t < coord_count; }

  Token class_token(KeyClass c) const { return ancestor() + static_cast<Token>(c); }

  std::optional<KeyClass> key_class(Token t) const {
    if (t < ancestor() || t > clone()) return std::nullopt;
    return static_cast<KeyClass>(t - ancestor());
  }
};

}  // namespace lgseq
