#pragma once

#include "lgseq/config.hpp"
#include "lgseq/geometry.hpp"

namespace lgseq {

/// Integer BEV grid cell. One cell is one coordinate token unit.
struct QuantPoint {
  int xb = 0;
  int yb = 0;

  friend bool operator==(const QuantPoint&, const QuantPoint&) = default;
  friend auto operator<=>(const QuantPoint&, const QuantPoint&) = default;
};

/// Floor binning, clamped into [0, bins) on both axes.
/// Throws Error(NonFiniteCoordinate) for NaN or infinite input.
QuantPoint quantize(Point2 p, const CodecConfig& cfg);

/// Center of the bin. Throws Error(BinOutOfRange) for cells outside the grid.
Point2 dequantize(QuantPoint q, const CodecConfig& cfg);

/// "Right front first": larger xb first, then smaller yb (y is left-positive).
inline bool right_front_before(QuantPoint a, QuantPoint b) {
  if (a.xb != b.xb) return a.xb > b.xb;
  return a.yb < b.yb;
}

}  // namespace lgseq
