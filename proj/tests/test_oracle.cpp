#include <gtest/gtest.h>

#include <cmath>

#include "relcon/baseline.hpp"
#include "relcon/oracle.hpp"

namespace {

using namespace relcon;

PayoffEnv quad_env(double delta = 0.8) {
  return make_polynomial_env({0.0, 1.0}, {0.6, 0.0, -0.5}, {0.0, 1.0}, delta);
}

RetirementEnv golden_env(int K = 2, double c = 0.5) {
  return RetirementEnv::make(quad_env(), K, MonotoneFn::affine(c, -c, Direction::decreasing));
}

TEST(SequenceCount, Binomial) {
  EXPECT_EQ(monotone_sequence_count(21, 4), 10626u);
  EXPECT_EQ(monotone_sequence_count(2, 2), 3u);
  EXPECT_EQ(monotone_sequence_count(5, 0), 1u);
}

TEST(Envelope, BoundedBySolverPath) {
  const PayoffEnv env = quad_env();
  const OptimalContract opt = solve_optimal(env);
  const GridSpec grid{21, 4};
  const Envelope e = enumerate_envelope(env, grid);
  EXPECT_EQ(e.enumerated, 10626u);
  ASSERT_EQ(e.max_level.size(), 4u);
  for (std::size_t t = 1; t <= 4; ++t) {
    EXPECT_LE(e.max_level[t - 1], opt.path.s[t] + grid.step()) << t;
    EXPECT_EQ(e.argmax[t - 1].size(), 5u);
  }
}

// With w strictly decreasing, a path that stops growing at T fails the summed
// constraint at T unless s_T = s_{T-1}, and the argument repeats backward:
// only the constant path survives the stationary-tail convention.
TEST(Envelope, StationaryTailAdmitsOnlyConstantPath) {
  for (double delta : {0.5, 0.8, 0.95}) {
    const Envelope e = enumerate_envelope(quad_env(delta), GridSpec{21, 3});
    EXPECT_EQ(e.passing, 1u) << delta;
    for (double x : e.max_level) EXPECT_EQ(x, 0.0);
  }
}

TEST(Envelope, TrivialEnvironmentStaysAtZero) {
  const PayoffEnv env = make_polynomial_env({0.0, 1.0}, {0.6, -0.3}, {0.0, 1.0}, 0.2);
  const Envelope e = enumerate_envelope(env, GridSpec{21, 4});
  for (double x : e.max_level) EXPECT_EQ(x, 0.0);
  EXPECT_EQ(e.passing, 1u);
}

TEST(Envelope, RefinementDoesNotLoseGround) {
  const PayoffEnv env = quad_env();
  const GridSpec coarse{21, 3}, fine{41, 3};
  const Envelope a = enumerate_envelope(env, coarse);
  const Envelope b = enumerate_envelope(env, fine);
  for (std::size_t t = 0; t < 3; ++t) EXPECT_GE(b.max_level[t], a.max_level[t] - coarse.step());
}

TEST(Envelope, CapExceeded) {
  EXPECT_THROW(enumerate_envelope(quad_env(), GridSpec{21, 4}, 1000), CapExceeded);
  EXPECT_THROW(oracle_retirement(golden_env(3), 101, 1000), CapExceeded);
}

TEST(Envelope, Deterministic) {
  const PayoffEnv env = quad_env();
  const Envelope a = enumerate_envelope(env, GridSpec{21, 4});
  const Envelope b = enumerate_envelope(env, GridSpec{21, 4});
  EXPECT_EQ(a.max_level, b.max_level);
  EXPECT_EQ(a.argmax, b.argmax);
  EXPECT_EQ(a.passing, b.passing);
}

TEST(RetirementOracle, HandComputedTwoLevelGrid) {
  // Grid {0, 1}, K = 2: (0,0) pays nothing and bears C(0); (0,1) earns 0;
  // (1,1) owes 0.5 in period 1 and breaks the principal's constraint there.
  const RetirementOracleResult r = oracle_retirement(golden_env(), 2);
  EXPECT_EQ(r.enumerated, 3u);
  EXPECT_EQ(r.passing, 2u);
  EXPECT_NEAR(r.best_profit, 0.0, 1e-15);
  EXPECT_EQ(r.best_sequence, (std::vector<double>{0.0, 0.0, 1.0}));
  EXPECT_EQ(r.best_payments, (std::vector<double>{0.0, 0.0}));
}

TEST(RetirementOracle, AgreesWithSolver) {
  for (int K : {2, 3}) {
    const RetirementEnv env = golden_env(K);
    const double exact = solve_retirement(env).Pi0R;
    const RetirementOracleResult r = oracle_retirement(env, 101);
    EXPECT_NEAR(r.best_profit, exact, 0.02) << K;
    EXPECT_LE(r.best_profit, exact + 1e-9) << K;
  }
}

TEST(RetirementOracle, ErrorShrinksWithGrid) {
  const RetirementEnv env = golden_env();
  const double exact = solve_retirement(env).Pi0R;
  const double coarse = std::abs(oracle_retirement(env, 21).best_profit - exact);
  const double fine = std::abs(oracle_retirement(env, 201).best_profit - exact);
  EXPECT_LT(fine, coarse);
}

TEST(RetirementOracle, NoCostNoEarlyTransfer) {
  for (int K : {2, 3}) {
    const RetirementEnv env =
        RetirementEnv::make(quad_env(), K, MonotoneFn::affine(0.0, 0.0, Direction::decreasing));
    const RetirementOracleResult r = oracle_retirement(env, 21);
    ASSERT_EQ(r.best_sequence.size(), static_cast<std::size_t>(K) + 1);
    for (int t = 0; t < K; ++t) {
      EXPECT_EQ(r.best_sequence[t], 0.0) << K;
      EXPECT_EQ(r.best_payments[t], 0.0) << K;
    }
  }
}

}  // namespace
