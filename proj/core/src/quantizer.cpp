#include "lgseq/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lgseq/error.hpp"

namespace lgseq {

namespace {

int bin_of(double v, double lo, double hi, int bins) {
  const double width = (hi - lo) / bins;
  const double scaled = std::floor((v - lo) / width);
  // Clamp in double space first so huge values cannot overflow the cast.
  int b = static_cast<int>(std::clamp(scaled, 0.0, static_cast<double>(bins - 1)));
  // The division can land one ulp off a bin edge; settle against the edges
  // lo + k * width that dequantize() centers between.
  if (b + 1 < bins && v >= lo + (b + 1) * width) ++b;
  if (b > 0 && v < lo + b * width) --b;
  return b;
}

}  // namespace

QuantPoint quantize(Point2 p, const CodecConfig& cfg) {
  if (!is_finite(p)) {
    throw Error(ErrorCode::NonFiniteCoordinate,
                "cannot quantize (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
  }
  return {bin_of(p.x, cfg.x_min, cfg.x_max, cfg.x_bins),
          bin_of(p.y, cfg.y_min, cfg.y_max, cfg.y_bins)};
}

Point2 dequantize(QuantPoint q, const CodecConfig& cfg) {
  if (q.xb < 0 || q.xb >= cfg.x_bins || q.yb < 0 || q.yb >= cfg.y_bins) {
    throw Error(ErrorCode::BinOutOfRange,
                "bin (" + std::to_string(q.xb) + ", " + std::to_string(q.yb) + ") outside grid");
  }
  return {cfg.x_min + (q.xb + 0.5) * cfg.bin_width_x(),
          cfg.y_min + (q.yb + 0.5) * cfg.bin_width_y()};
}

}  // namespace lgseq
