#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "subgrad/costs.hpp"

namespace subgrad {
namespace {

TEST(SampleSphere, UnitNorm) {
  RngStream rng(1, 0);
  for (std::size_t d : {2u, 3u, 10u, 64u}) {
    for (int i = 0; i < 1000; ++i) EXPECT_NEAR(norm(sample_sphere(d, rng)), 1.0, 1e-12);
  }
  EXPECT_THROW(sample_sphere(1, rng), InvalidParameter);
}

TEST(SampleSphere, ComponentMeansVanish) {
  constexpr int kSamples = 100000;
  for (std::size_t d : {2u, 5u}) {
    RngStream rng(2, d);
    Point total(d);
    for (int i = 0; i < kSamples; ++i) total += sample_sphere(d, rng);
    // Each component has variance 1/d; allow 15 standard errors.
    const double tol = 5.0 * std::sqrt(1.0 / (static_cast<double>(d) * kSamples)) * 3.0;
    for (std::size_t j = 0; j < d; ++j) EXPECT_NEAR(total[j] / kSamples, 0.0, tol);
  }
}

TEST(SampleSphere, PlanarAnglesAreUniform) {
  constexpr int kSamples = 10000;
  RngStream rng(3, 0);
  std::vector<double> angles;
  for (int i = 0; i < kSamples; ++i) {
    const Point v = sample_sphere(2, rng);
    double a = std::atan2(v[1], v[0]);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    angles.push_back(a / (2.0 * std::numbers::pi));
  }
  std::sort(angles.begin(), angles.end());
  double ks = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    ks = std::max({ks, (i + 1.0) / kSamples - angles[i], angles[i] - static_cast<double>(i) / kSamples});
  }
  // Asymptotic Kolmogorov-Smirnov critical value at level 0.01.
  EXPECT_LT(ks, 1.628 / std::sqrt(static_cast<double>(kSamples)));
}

TEST(CostStream, ZeroNoiseRepeatsTheMean) {
  CostStream s(CostModel::sphere_noise(Point{0.0, 1.0}, 0.0), RngStream(4, 0));
  for (int i = 0; i < 10; ++i) EXPECT_EQ(s.next(), (Point{0.0, 1.0}));
}

TEST(CostStream, SphereNoiseStaysOnTheSphere) {
  const Point a{0.0, 1.0, 1.0, 1.0};
  CostStream s(CostModel::sphere_noise(a, 3.0), RngStream(5, 0));
  for (int i = 0; i < 1000; ++i) {
    const Point c = s.next();
    EXPECT_NEAR(distance(c, a), 3.0, 1e-12);
    EXPECT_LE(norm(c), norm(a) + 3.0 + 1e-12);
  }
}

TEST(CostStream, CurvedExample) {
  CostStream s(CostModel::curved_example(), RngStream(6, 0));
  double first = 0.0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const Point c = s.next();
    EXPECT_EQ(c[1], 1.0);
    EXPECT_TRUE(c[0] == 1.0 || c[0] == -1.0);
    first += c[0];
  }
  EXPECT_NEAR(first / kDraws, 0.0, 0.02);
}

TEST(CostStream, GreedyExample) {
  CostStream s(CostModel::greedy_example(), RngStream(7, 0));
  double total = 0.0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const Point c = s.next();
    ASSERT_EQ(c.size(), 1u);
    total += c[0];
  }
  EXPECT_NEAR(total / kDraws, 0.5, 0.02);

  CostStream lifted(CostModel::greedy_example(true), RngStream(7, 0));
  const Point c = lifted.next();
  EXPECT_EQ(c[0], -c[1]);
}

TEST(CostStream, ScriptedReplaysThenEnds) {
  const std::vector<Point> script{Point{1.0, 2.0}, Point{3.0, 4.0}};
  CostStream s(CostModel::scripted(script), RngStream(0, 0));
  EXPECT_EQ(s.next(), script[0]);
  EXPECT_EQ(s.next(), script[1]);
  EXPECT_THROW(s.next(), StreamEnd);
}

TEST(CostStream, ReproducibleBySeedAndStream) {
  const auto model = CostModel::sphere_noise(Point{0.0, 1.0, 2.0}, 1.5);
  CostStream a(model, RngStream(99, 3));
  CostStream b(model, RngStream(99, 3));
  CostStream c(model, RngStream(99, 4));
  bool differs = false;
  for (int i = 0; i < 200; ++i) {
    const Point x = a.next();
    EXPECT_EQ(x, b.next());
    differs = differs || x != c.next();
  }
  EXPECT_TRUE(differs);
}

double correlation(const std::vector<Point>& xs, const std::vector<Point>& ys, std::size_t j) {
  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i][j];
    my += ys[i][j];
  }
  mx /= k;
  my /= k;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i][j] - mx) * (ys[i][j] - my);
    sxx += (xs[i][j] - mx) * (xs[i][j] - mx);
    syy += (ys[i][j] - my) * (ys[i][j] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

std::vector<Point> draw(std::uint64_t seed, std::uint64_t id, std::size_t count) {
  CostStream s(CostModel::sphere_noise(Point{0.0, 0.0, 0.0}, 1.0), RngStream(seed, id));
  std::vector<Point> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(s.next());
  return out;
}

TEST(CostStream, DistinctStreamsAreUncorrelated) {
  const auto xs = draw(0, 0, 1000);
  const auto ys = draw(0, 1, 1000);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_LT(std::abs(correlation(xs, ys, j)), 0.05) << j;
}

TEST(CostStream, CrossCorrelationsMatchIndependence) {
  // Under independence r is close to N(0, 1/1000), so |r| > 0.05 has
  // probability about 0.114.
  std::size_t over = 0, total = 0;
  for (std::uint64_t id = 0; id < 200; ++id) {
    const auto xs = draw(7, 2 * id, 1000);
    const auto ys = draw(7, 2 * id + 1, 1000);
    for (std::size_t j = 0; j < 3; ++j, ++total) over += std::abs(correlation(xs, ys, j)) > 0.05;
  }
  const double rate = static_cast<double>(over) / static_cast<double>(total);
  EXPECT_NEAR(rate, 0.114, 0.05);

  const auto xs = draw(8, 0, 100000);
  const auto ys = draw(8, 1, 100000);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_LT(std::abs(correlation(xs, ys, j)), 0.02);
}

TEST(CostModel, Validation) {
  EXPECT_THROW(CostModel::sphere_noise(Point{0.0, 1.0}, -1.0), InvalidParameter);
  EXPECT_THROW(CostModel::scripted({}), InvalidInput);
  EXPECT_THROW(CostModel::scripted({Point{1.0}, Point{1.0, 2.0}}), InvalidInput);
  EXPECT_EQ(*CostModel::curved_example().mean(), (Point{0.0, 1.0}));
  EXPECT_EQ(*CostModel::greedy_example().mean(), Point{0.5});
  EXPECT_FALSE(CostModel::scripted({Point{1.0}}).mean());
}

TEST(Gaps, AllOnesAfterZero) {
  Point a(8, 1.0);
  a[0] = 0.0;
  const GapProfile g = gaps(a);
  EXPECT_EQ(*g.min_positive_gap, 1.0);
  EXPECT_EQ(g.sorted_gaps[0], 0.0);
  for (std::size_t j = 1; j < 8; ++j) EXPECT_EQ(g.sorted_gaps[j], 1.0);
  EXPECT_EQ(g.permutation[0], 0u);
}

TEST(Gaps, AlreadySorted) {
  const GapProfile g = gaps(Point{0.0, 1.0, 2.0, 3.0});
  EXPECT_EQ(g.sorted_gaps, (std::vector<double>{0.0, 1.0, 2.0, 3.0}));
  EXPECT_EQ(*g.min_positive_gap, 1.0);
}

TEST(Gaps, DegenerateMeanHasNoGap) {
  const GapProfile g = gaps(Point{5.0, 5.0});
  EXPECT_EQ(g.sorted_gaps, (std::vector<double>{0.0, 0.0}));
  EXPECT_FALSE(g.min_positive_gap);
}

TEST(Gaps, PermutationSortsAscendingWithStableTies) {
  const GapProfile g = gaps(Point{2.0, 0.5, 2.0, -1.0});
  EXPECT_EQ(g.permutation, (std::vector<std::size_t>{3, 1, 0, 2}));
  EXPECT_EQ(g.sorted_gaps, (std::vector<double>{0.0, 1.5, 3.0, 3.0}));
  EXPECT_EQ(g.gap_of(1), 1.5);
}

TEST(ScriptedFormat, ParsesCommentsAndBlankLines) {
  std::istringstream in("# header\n1,2,3\n\n  -0.5, 4e-1 ,+2\n# trailing\n");
  const auto costs = parse_scripted_costs(in);
  ASSERT_EQ(costs.size(), 2u);
  EXPECT_EQ(costs[0], (Point{1.0, 2.0, 3.0}));
  EXPECT_EQ(costs[1], (Point{-0.5, 0.4, 2.0}));
}

TEST(ScriptedFormat, RejectsBadLines) {
  std::istringstream ragged("1,2\n1,2,3\n");
  EXPECT_THROW(parse_scripted_costs(ragged), InvalidInput);
  std::istringstream junk("1,abc\n");
  EXPECT_THROW(parse_scripted_costs(junk), InvalidInput);
  std::istringstream inf("1,inf\n");
  EXPECT_THROW(parse_scripted_costs(inf), InvalidInput);
  EXPECT_THROW(load_scripted_costs("/nonexistent/costs.txt"), FileError);
}

}  // namespace
}  // namespace subgrad
