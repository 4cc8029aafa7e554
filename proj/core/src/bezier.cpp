#include "lgseq/bezier.hpp"

#include "lgseq/error.hpp"

namespace lgseq {

EdgeCurve fit_control_point(std::span<const Point2> points) {
  if (points.size() < 3) {
    throw Error(ErrorCode::InvalidGraph, "curve fit needs at least 3 points");
  }
  const Point2 p0 = points.front();
  const Point2 p1 = points.back();

  double chord = 0.0;
  for (std::size_t k = 1; k < points.size(); ++k) chord += distance(points[k - 1], points[k]);
  if (chord == 0.0) return {p0, p0, p1};

  const double last = static_cast<double>(points.size() - 1);
  double bb = 0.0;
  Point2 br;
  for (std::size_t k = 1; k + 1 < points.size(); ++k) {
    const double t = static_cast<double>(k) / last;
    const double u = 1.0 - t;
    const double b = 2.0 * t * u;
    const Point2 r = points[k] - (u * u) * p0 - (t * t) * p1;
    bb += b * b;
    br = br + b * r;
  }
  return {p0, (1.0 / bb) * br, p1};
}

std::vector<Point2> sample_curve(const EdgeCurve& curve, int n) {
  std::vector<Point2> out;
  if (n < 2) return out;
  out.reserve(static_cast<std::size_t>(n));
  out.push_back(curve.p0);
  for (int k = 1; k + 1 < n; ++k) {
    out.push_back(curve.at(static_cast<double>(k) / (n - 1)));
  }
  out.push_back(curve.p1);
  return out;
}

std::array<Point2, 4> elevate_to_cubic(const EdgeCurve& curve) {
  constexpr double kTwoThirds = 2.0 / 3.0;
  return {curve.p0, curve.p0 + kTwoThirds * (curve.c - curve.p0),
          curve.p1 + kTwoThirds * (curve.c - curve.p1), curve.p1};
}

Point2 eval_cubic(const std::array<Point2, 4>& cubic, double t) {
  const double u = 1.0 - t;
  return (u * u * u) * cubic[0] + (3.0 * u * u * t) * cubic[1] + (3.0 * u * t * t) * cubic[2] +
         (t * t * t) * cubic[3];
}

}  // namespace lgseq
