#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "relcon/numeric.hpp"

namespace {

using relcon::bisect_boundary;
using relcon::golden_section_max;
using relcon::grid_point;
using relcon::invert_increasing;
using relcon::smallest_maximizer_on;

TEST(GridPoint, EndpointsAreExact) {
  EXPECT_EQ(grid_point(0.0, 1.0, 0, 11), 0.0);
  EXPECT_EQ(grid_point(0.0, 1.0, 10, 11), 1.0);
  EXPECT_EQ(grid_point(0.0, 1.0, 80000, 100001), 0.8);
}

TEST(BisectBoundary, FindsThresholdFromEitherSide) {
  auto below = [](double x) { return x <= 0.3; };
  EXPECT_NEAR(bisect_boundary(below, 0.0, 1.0), 0.3, 1e-15);
  auto above = [](double x) { return x >= 0.3; };
  EXPECT_NEAR(bisect_boundary(above, 1.0, 0.0), 0.3, 1e-15);
}

TEST(InvertIncreasing, CubicRandomTargets) {
  auto f = [](double x) { return x * x * x + x; };
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    const double got = invert_increasing(f, f(x), 0.0, 1.0);
    EXPECT_NEAR(f(got), f(x), 1e-14);
  }
}

TEST(InvertIncreasing, ExactEndpoints) {
  auto f = [](double x) { return 2.0 * x; };
  EXPECT_EQ(invert_increasing(f, 0.0, 0.0, 1.0), 0.0);
  EXPECT_EQ(invert_increasing(f, 2.0, 0.0, 1.0), 1.0);
}

TEST(GoldenSection, QuadraticPeak) {
  const auto r = golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0);
  EXPECT_NEAR(r.arg, 0.3, 1e-7);
  EXPECT_NEAR(r.value, 0.0, 1e-14);
}

TEST(SmallestMaximizer, ConstantFunctionPicksLowerBound) {
  const auto r = smallest_maximizer_on([](double) { return 0.6; }, 0.0, 1001, 1e-11);
  EXPECT_EQ(r.arg, 0.0);
  EXPECT_EQ(r.value, 0.6);
}

TEST(SmallestMaximizer, PlateauLeftEdgeIsRefined) {
  // max at every s >= 0.5037; the edge is off-grid
  auto f = [](double s) { return std::min(s, 0.5037); };
  const auto r = smallest_maximizer_on(f, 0.0, 101, 1e-11);
  EXPECT_NEAR(r.arg, 0.5037, 1e-10);
}

TEST(SmallestMaximizer, OnGridPeakIsExact) {
  auto f = [](double s) { return 0.8 * s + 0.6 - 0.5 * s * s; };
  const auto r = smallest_maximizer_on(f, 0.0, 100001, 1e-11);
  EXPECT_EQ(r.arg, 0.8);
  EXPECT_NEAR(r.value, 0.92, 1e-15);
}

TEST(SmallestMaximizer, OffGridPeakIsRefined) {
  auto f = [](double s) { return -(s - 0.123456789) * (s - 0.123456789); };
  const auto r = smallest_maximizer_on(f, 0.0, 1001, 1e-11);
  EXPECT_NEAR(r.arg, 0.123456789, 1e-7);
}

TEST(SmallestMaximizer, NearTiePrefersLeftPeak) {
  // Two peaks; the left one is lower by less than eps_val.
  auto f = [](double s) {
    const double a = -50.0 * (s - 0.2) * (s - 0.2) - 5e-12;
    const double b = -50.0 * (s - 0.7) * (s - 0.7);
    return std::max(a, b);
  };
  const auto r = smallest_maximizer_on(f, 0.0, 1001, 1e-11);
  EXPECT_NEAR(r.arg, 0.2, 1e-6);
  EXPECT_NEAR(r.value, 0.0, 1e-15);
}

TEST(SmallestMaximizer, RestrictedSearchSharesGrid) {
  auto f = [](double s) { return 0.8 * s + 0.6 - 0.5 * s * s; };
  const auto full = smallest_maximizer_on(f, 0.0, 100001, 1e-11);
  const auto part = smallest_maximizer_on(f, 0.4, 100001, 1e-11);
  EXPECT_EQ(full.arg, part.arg);
}

}  // namespace
