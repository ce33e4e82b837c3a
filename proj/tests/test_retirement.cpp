#include <gtest/gtest.h>

#include <cmath>

#include "relcon/retirement.hpp"

namespace {

using namespace relcon;

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

// pi = s, w = 0.6 - 0.5 s^2, C = c (1 - s), delta = 0.8.
RetirementEnv golden_env(int K = 2, double c = 0.5) {
  PayoffEnv base = make_polynomial_env({0.0, 1.0}, {0.6, 0.0, -0.5}, {0.0, 1.0}, 0.8);
  return RetirementEnv::make(std::move(base), K, MonotoneFn::affine(c, -c, Direction::decreasing));
}

TEST(RetirementEnv, Validation) {
  PayoffEnv base = make_polynomial_env({0.0, 1.0}, {0.6, 0.0, -0.5}, {0.0, 1.0}, 0.8);
  EXPECT_THROW(RetirementEnv::make(base, 1, MonotoneFn::affine(0.5, -0.5, Direction::decreasing)),
               BadParams);
  EXPECT_THROW(RetirementEnv::make(base, 2, MonotoneFn::affine(0.5, -0.4, Direction::decreasing)),
               AssumptionViolated);
  EXPECT_THROW(RetirementEnv::make(base, 2, MonotoneFn::affine(-0.5, 0.5, Direction::decreasing)),
               AssumptionViolated);
  EXPECT_THROW(RetirementEnv::make(base, 2, MonotoneFn::affine(0.5, -0.5, Direction::increasing)),
               AssumptionViolated);
  EXPECT_NO_THROW(RetirementEnv::make(base, 2, MonotoneFn::affine(0.0, 0.0, Direction::decreasing)));
}

// With K = 2 and t = 1 the stage-benefit coefficient vanishes and the
// break-even condition reads c (s2 - s1) = 0.5 s1^2 (c = 0.5: s2 = s1 + s1^2).
TEST(RbeStep, GoldenRatioReachesOne) {
  const RetirementEnv env = golden_env();
  EXPECT_NEAR(rbe_step(env, 0.0, kGolden, 1), 1.0, 1e-12);
}

TEST(RbeStep, ZeroRightSideGivesZeroStep) {
  const RetirementEnv env = golden_env();
  for (double x : {0.0, 0.25, 0.9}) EXPECT_EQ(rbe_step(env, x, x, 1), x);
}

TEST(RbeStep, NoRootWhenTransferTooLarge) {
  EXPECT_THROW(rbe_step(golden_env(), 0.0, 0.9, 1), NoRoot);
}

TEST(RbeStep, InteriorValue) {
  EXPECT_NEAR(rbe_step(golden_env(), 0.0, 0.5, 1), 0.75, 1e-12);
}

TEST(RbeStep, PeriodOutOfRange) {
  EXPECT_THROW(rbe_step(golden_env(), 0.0, 0.5, 0), BadParams);
  EXPECT_THROW(rbe_step(golden_env(), 0.0, 0.5, 2), BadParams);
}

TEST(RbeStep, ResidualVanishesForLongerHorizon) {
  const RetirementEnv env = golden_env(4, 2.0);
  const PayoffEnv& b = env.base();
  const double d = b.delta();
  const int K = 4;
  for (int t = 1; t <= 3; ++t) {
    const double s_prev = 0.05 * t, s_curr = 0.05 * t + 0.02;
    const double x = rbe_step(env, s_prev, s_curr, t);
    const double lhs = (d - std::pow(d, K - t)) * (b.pi(x) - b.pi(s_curr)) / (1 - d) +
                       std::pow(d, K - 1 - t) * (env.C(s_curr) - env.C(x));
    const double rhs = (1 - std::pow(d, K - t)) * (b.w(s_prev) - b.w(s_curr)) / (1 - d);
    EXPECT_NEAR(lhs, rhs, 1e-12);
    EXPECT_GE(x, s_curr);
  }
}

TEST(Shoot, GoldenRatioClosesGap) {
  const ShotResult r = shoot(golden_env(), kGolden);
  ASSERT_TRUE(r.feasible());
  EXPECT_NEAR(*r.terminal_gap, 0.0, 1e-9);
}

TEST(Shoot, InteriorGap) {
  const ShotResult r = shoot(golden_env(), 0.5);
  ASSERT_TRUE(r.feasible());
  ASSERT_EQ(r.sequence.size(), 3u);
  EXPECT_EQ(r.sequence[0], 0.0);
  EXPECT_EQ(r.sequence[1], 0.5);
  EXPECT_NEAR(r.sequence[2], 0.75, 1e-12);
  EXPECT_NEAR(*r.terminal_gap, 0.25, 1e-12);
}

TEST(Shoot, InfeasibleGift) { EXPECT_FALSE(shoot(golden_env(), 0.9).feasible()); }

TEST(SolveRetirement, GoldenClosedForm) {
  const RetirementEnv env = golden_env();
  const RetirementContract rc = solve_retirement(env);
  ASSERT_EQ(rc.s.size(), 3u);
  ASSERT_EQ(rc.p.size(), 2u);
  EXPECT_NEAR(rc.s[1], kGolden, 1e-9);
  EXPECT_EQ(rc.s[2], 1.0);
  EXPECT_EQ(rc.p[0], 0.0);
  EXPECT_NEAR(rc.p[1], 0.5 * kGolden * kGolden, 1e-9);
  EXPECT_NEAR(rc.p[1], 0.190983, 1e-6);
  EXPECT_NEAR(rc.Pi0R, 0.16 * kGolden / 0.2 - 0.8 * 0.5 * (1.0 - kGolden), 1e-9);
  EXPECT_NEAR(rc.Pi0R, 0.341641, 1e-6);
  ASSERT_EQ(rc.s1_roots.size(), 1u);
}

TEST(SolveRetirement, ProfitIdentityMatchesRawSum) {
  for (int K : {2, 3, 5}) {
    const RetirementEnv env = golden_env(K, 1.5);
    const RetirementContract rc = solve_retirement(env);
    const PayoffEnv& b = env.base();
    const double d = b.delta();
    double raw = -std::pow(d, K - 1) * env.C(rc.s[K]);
    for (int t = 0; t < K; ++t) raw += std::pow(d, t) * (b.pi(rc.s[t]) - rc.p[t]);
    EXPECT_NEAR(rc.Pi0R, raw, 1e-9) << "K=" << K;
  }
}

TEST(SolveRetirement, SteeperCostClosedForm) {
  // 5 (1 - s1) = 0.5 s1^2  =>  s1 = -5 + sqrt(35)
  const RetirementContract rc = solve_retirement(golden_env(2, 5.0));
  EXPECT_NEAR(rc.s[1], -5.0 + std::sqrt(35.0), 1e-9);
}

TEST(SolveRetirement, StrictGradualismAndBreakEven) {
  for (int K : {3, 4, 6}) {
    const RetirementEnv env = golden_env(K, 1.0);
    const RetirementContract rc = solve_retirement(env);
    const PayoffEnv& b = env.base();
    const double d = b.delta();
    ASSERT_EQ(rc.s.size(), static_cast<std::size_t>(K) + 1);
    for (int t = 0; t < K; ++t) EXPECT_LT(rc.s[t], rc.s[t + 1]) << "K=" << K << " t=" << t;
    EXPECT_EQ(rc.s[K], 1.0);
    for (int t = 1; t <= K - 1; ++t) {
      const double lhs = (d - std::pow(d, K - t)) * (b.pi(rc.s[t + 1]) - b.pi(rc.s[t])) / (1 - d) +
                         std::pow(d, K - 1 - t) * (env.C(rc.s[t]) - env.C(rc.s[t + 1]));
      const double rhs = (1 - std::pow(d, K - t)) * (b.w(rc.s[t - 1]) - b.w(rc.s[t])) / (1 - d);
      EXPECT_NEAR(lhs, rhs, 1e-9) << "K=" << K << " t=" << t;
    }
  }
}

// pi = (1+s)^10, w = 1 - s, C = 0.01 (1 - s), delta = 0.9, three expert
// periods: three gifts reach full knowledge, at about 0.1131, 0.2021 and
// 0.9504; the optimal contract uses the largest.
TEST(SolveRetirement, MultipleRootsLargestSelected) {
  PayoffEnv base = PayoffEnv::make(
      MonotoneFn::composite("pow10", {}, [](double s) { return std::pow(1.0 + s, 10); },
                            Direction::increasing),
      MonotoneFn::affine(1.0, -1.0, Direction::decreasing),
      MonotoneFn::affine(0.0, 1.0, Direction::increasing), 0.9);
  const RetirementEnv env =
      RetirementEnv::make(std::move(base), 3, MonotoneFn::affine(0.01, -0.01, Direction::decreasing));
  const RetirementContract rc = solve_retirement(env);
  ASSERT_EQ(rc.s1_roots.size(), 3u);
  EXPECT_NEAR(rc.s1_roots[0], 0.1131, 1e-4);
  EXPECT_NEAR(rc.s1_roots[1], 0.2021, 1e-4);
  EXPECT_NEAR(rc.s1_roots[2], 0.9504, 1e-4);
  EXPECT_EQ(rc.s[1], rc.s1_roots.back());
  for (double r : rc.s1_roots) EXPECT_NEAR(*shoot(env, r).terminal_gap, 0.0, 1e-9);
}

TEST(SolveRetirement, NoCostMeansNoContract) {
  PayoffEnv base = make_polynomial_env({0.0, 1.0}, {0.6, 0.0, -0.5}, {0.0, 1.0}, 0.8);
  const RetirementEnv env =
      RetirementEnv::make(std::move(base), 2, MonotoneFn::affine(0.0, 0.0, Direction::decreasing));
  EXPECT_THROW(solve_retirement(env), NoContract);
}

TEST(SolveRetirement, BeatsLastPeriodOnlyBenchmark) {
  for (int K : {2, 3, 4}) {
    const RetirementEnv env = golden_env(K, 0.5);
    const PayoffEnv& b = env.base();
    const double d = b.delta();
    double benchmark = 0.0;  // s = (0,...,0,1), p = 0, C(1) = 0
    for (int t = 0; t < K; ++t) benchmark += std::pow(d, t) * b.pi(0.0);
    EXPECT_GT(solve_retirement(env).Pi0R, benchmark) << "K=" << K;
  }
}

TEST(CostScalingSweep, MonotoneInLambda) {
  const RetirementEnv env = golden_env();
  const auto rows = cost_scaling_sweep(env, {0.5, 1.0, 2.0, 5.0, 10.0});
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_NEAR(rows[1].s1_star, kGolden, 1e-9);
  EXPECT_NEAR(rows[4].s1_star, -5.0 + std::sqrt(35.0), 1e-9);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GT(rows[i].s1_star, rows[i - 1].s1_star);
    EXPECT_GT(rows[i].Pi0R, rows[i - 1].Pi0R);
  }
}

TEST(CostScalingSweep, HugeCostFrontloadsAlmostEverything) {
  const auto rows = cost_scaling_sweep(golden_env(), {10000.0});
  EXPECT_GE(rows[0].s1_star, 0.999);
}

TEST(CostScalingSweep, UnsortedRejected) {
  EXPECT_THROW(cost_scaling_sweep(golden_env(), {2.0, 1.0}), BadParams);
}

TEST(CostScalingSweep, DominanceOnLongerHorizons) {
  for (int K : {3, 5}) {
    const auto rows = cost_scaling_sweep(golden_env(K, 0.5), {1.0, 2.0, 4.0});
    for (std::size_t i = 1; i < rows.size(); ++i) {
      EXPECT_GE(rows[i].s1_star, rows[i - 1].s1_star) << "K=" << K;
      EXPECT_GT(rows[i].Pi0R, rows[i - 1].Pi0R) << "K=" << K;
    }
  }
}

}  // namespace
