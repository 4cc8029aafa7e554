#pragma once

#include <array>
#include <span>
#include <vector>

#include "lgseq/geometry.hpp"

namespace lgseq {

/// Quadratic Bezier between two keypoints with a single interior control.
/// This is exactly what one sextet can carry; elevate_to_cubic() gives the
/// equivalent cubic form.
struct EdgeCurve {
  Point2 p0;
  Point2 c;
  Point2 p1;

  Point2 at(double t) const {
    const double u = 1.0 - t;
    return (u * u) * p0 + (2.0 * t * u) * c + (t * t) * p1;
  }
};

/// Least-squares interior control for an ordered polyline with fixed
/// endpoints points.front() / points.back().
///
/// Points are assigned parameters t_k = k / (n - 1), the same grid
/// sample_curve() emits, so a centerline sampled from a quadratic is
/// recovered exactly. The minimizer is closed form:
///   c = sum b_k r_k / sum b_k^2,  b_k = 2 t_k (1 - t_k),
///   r_k = P_k - (1 - t_k)^2 p0 - t_k^2 p1.
/// A zero-length polyline yields c = p0. Requires at least 3 points
/// (throws Error(InvalidGraph) otherwise).
EdgeCurve fit_control_point(std::span<const Point2> points);

/// n >= 2 samples at t_k = k / (n - 1); the first and last are p0 / p1 exactly.
std::vector<Point2> sample_curve(const EdgeCurve& curve, int n);

/// Degree elevation to the cubic (p0, q1, q2, p1) tracing the same curve.
std::array<Point2, 4> elevate_to_cubic(const EdgeCurve& curve);

/// Evaluates a cubic Bezier given its four control points.
Point2 eval_cubic(const std::array<Point2, 4>& cubic, double t);

}  // namespace lgseq
