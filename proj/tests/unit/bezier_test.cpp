#include <vector>

#include <gtest/gtest.h>

#include "lgseq/bezier.hpp"
#include "lgseq/error.hpp"
#include "lgseq/rng.hpp"

using namespace lgseq;

namespace {

// Independent evaluation through de Casteljau rather than the Bernstein form.
Point2 casteljau(Point2 p0, Point2 c, Point2 p1, double t) {
  const Point2 a = p0 + t * (c - p0);
  const Point2 b = c + t * (p1 - c);
  return a + t * (b - a);
}

}  // namespace

TEST(FitControlPoint, CollinearUniformPointsGiveChordMidpoint) {
  std::vector<Point2> pts;
  for (int k = 0; k < 10; ++k) pts.push_back({static_cast<double>(k), 0.0});
  const auto e = fit_control_point(pts);
  EXPECT_NEAR(e.c.x, 4.5, 1e-12);
  EXPECT_NEAR(e.c.y, 0.0, 1e-12);
  EXPECT_EQ(e.p0.x, 0.0);
  EXPECT_EQ(e.p1.x, 9.0);
}

TEST(FitControlPoint, DegenerateInputGivesStart) {
  const std::vector<Point2> pts(6, Point2{3.0, -2.0});
  const auto e = fit_control_point(pts);
  EXPECT_EQ(e.c.x, 3.0);
  EXPECT_EQ(e.c.y, -2.0);
}

TEST(FitControlPoint, NeedsThreePoints) {
  const std::vector<Point2> pts{{0, 0}, {1, 1}};
  try {
    fit_control_point(pts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidGraph);
  }
}

TEST(FitControlPoint, GenerateThenFitRecoversControl) {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const Point2 p0{rng.uniform(-50, 50), rng.uniform(-25, 25)};
    const Point2 c{rng.uniform(-50, 50), rng.uniform(-25, 25)};
    const Point2 p1{rng.uniform(-50, 50), rng.uniform(-25, 25)};
    const int n = 3 + static_cast<int>(rng.uniform_index(30));
    std::vector<Point2> pts;
    for (int k = 0; k < n; ++k) pts.push_back(casteljau(p0, c, p1, static_cast<double>(k) / (n - 1)));
    const auto e = fit_control_point(pts);
    ASSERT_NEAR(e.c.x, c.x, 1e-9);
    ASSERT_NEAR(e.c.y, c.y, 1e-9);
  }
}

TEST(SampleCurve, StraightCurveThreeSamples) {
  const EdgeCurve e{{0, 0}, {2, 1}, {4, 2}};
  const auto s = sample_curve(e, 3);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].x, 0.0);
  EXPECT_DOUBLE_EQ(s[1].x, 2.0);
  EXPECT_DOUBLE_EQ(s[1].y, 1.0);
  EXPECT_EQ(s[2].x, 4.0);
  EXPECT_EQ(s[2].y, 2.0);
}

TEST(SampleCurve, TwoSamplesAreEndpoints) {
  const EdgeCurve e{{1, 2}, {7, -3}, {5, 5}};
  const auto s = sample_curve(e, 2);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].x, 1.0);
  EXPECT_EQ(s[0].y, 2.0);
  EXPECT_EQ(s[1].x, 5.0);
  EXPECT_EQ(s[1].y, 5.0);
}

TEST(SampleCurve, MatchesCasteljau) {
  const EdgeCurve e{{-3, 4}, {10, 9}, {6, -2}};
  const auto s = sample_curve(e, 17);
  for (int k = 0; k < 17; ++k) {
    const auto r = casteljau(e.p0, e.c, e.p1, k / 16.0);
    EXPECT_NEAR(s[k].x, r.x, 1e-12);
    EXPECT_NEAR(s[k].y, r.y, 1e-12);
  }
}

TEST(ElevateToCubic, WorkedExample) {
  const auto q = elevate_to_cubic({{0, 0}, {3, 3}, {6, 0}});
  EXPECT_DOUBLE_EQ(q[1].x, 2.0);
  EXPECT_DOUBLE_EQ(q[1].y, 2.0);
  EXPECT_DOUBLE_EQ(q[2].x, 4.0);
  EXPECT_DOUBLE_EQ(q[2].y, 2.0);
  EXPECT_EQ(q[0].x, 0.0);
  EXPECT_EQ(q[3].x, 6.0);
}

TEST(ElevateToCubic, CoincidentPoints) {
  const auto q = elevate_to_cubic({{1, 1}, {1, 1}, {1, 1}});
  for (const auto& p : q) {
    EXPECT_EQ(p.x, 1.0);
    EXPECT_EQ(p.y, 1.0);
  }
}

TEST(ElevateToCubic, TracesTheSameCurve) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const EdgeCurve e{{rng.uniform(-9, 9), rng.uniform(-9, 9)},
                      {rng.uniform(-9, 9), rng.uniform(-9, 9)},
                      {rng.uniform(-9, 9), rng.uniform(-9, 9)}};
    const auto q = elevate_to_cubic(e);
    for (int k = 0; k <= 20; ++k) {
      const double t = k / 20.0;
      const auto a = e.at(t);
      const auto b = eval_cubic(q, t);
      ASSERT_NEAR(a.x, b.x, 1e-9);
      ASSERT_NEAR(a.y, b.y, 1e-9);
    }
  }
}
