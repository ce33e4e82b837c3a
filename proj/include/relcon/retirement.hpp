#ifndef RELCON_RETIREMENT_HPP
#define RELCON_RETIREMENT_HPP

// Finite-horizon contract with retiring experts: each expert serves K
// periods; an under-trained successor costs the principal C(s_K) to bring up
// to full knowledge. Solved by shooting on the knowledge gift s1.

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "relcon/errors.hpp"
#include "relcon/numeric.hpp"
#include "relcon/payoff_env.hpp"
#include "relcon/solver_config.hpp"

namespace relcon {

class RetirementEnv {
 public:
  /// Requires K >= 2, C(1) = 0 and C non-increasing on the validation grid.
  static RetirementEnv make(PayoffEnv base, int K, MonotoneFn C,
                            std::size_t n_grid = kValidationGrid, double eps_mono = kEpsMono) {
    if (K < 2) throw BadParams("expert phase length K must be at least 2");
    if (C.direction() != Direction::decreasing)
      throw AssumptionViolated("catch-up cost must be declared decreasing");
    if (std::abs(C(1.0)) > 1e-12) {
      std::ostringstream os;
      os << "catch-up cost must vanish at full knowledge, C(1) = " << C(1.0);
      throw AssumptionViolated(os.str());
    }
    double prev = C(0.0);
    for (std::size_t i = 1; i < n_grid; ++i) {
      const double s = grid_point(0.0, 1.0, i, n_grid);
      const double c = C(s);
      if (c - prev > eps_mono) {
        std::ostringstream os;
        os.precision(12);
        os << "catch-up cost increases near s=" << s;
        throw AssumptionViolated(os.str());
      }
      prev = c;
    }
    return RetirementEnv(std::move(base), K, std::move(C));
  }

  const PayoffEnv& base() const { return base_; }
  int K() const { return K_; }
  double C(double s) const { return C_(s); }
  const MonotoneFn& C_fn() const { return C_; }
  double delta() const { return base_.delta(); }

  /// Same environment with the catch-up cost multiplied by lambda > 0.
  RetirementEnv with_cost_scale(double lambda) const {
    return RetirementEnv(base_, K_, C_.scaled(lambda));
  }

 private:
  RetirementEnv(PayoffEnv base, int K, MonotoneFn C)
      : base_(std::move(base)), K_(K), C_(std::move(C)) {}

  PayoffEnv base_;
  int K_;
  MonotoneFn C_;
};

struct RetirementContract {
  std::vector<double> s;  // K + 1 levels, s[K] = 1
  std::vector<double> p;  // K payments
  double Pi0R = 0.0;
  std::vector<double> s1_roots;
};

/// Next level from the retirement break-even condition at period t:
///   (d - d^{K-t}) [pi(x) - pi(s_t)] / (1-d) + d^{K-1-t} [C(s_t) - C(x)]
///     = (1 - d^{K-t}) [w(s_{t-1}) - w(s_t)] / (1-d).
/// The left side is non-decreasing in x, so the root on [s_curr, 1] is found
/// by bisection. The tolerance eps_root is relative to the magnitude of the
/// terms.
inline double rbe_step(const RetirementEnv& env, double s_prev, double s_curr, int t,
                       double eps_root = kEpsRoot) {
  const int K = env.K();
  if (t < 1 || t > K - 1) throw BadParams("rbe_step period must lie in [1, K-1]");
  const PayoffEnv& b = env.base();
  const double d = b.delta();
  const double benefit = (d - std::pow(d, K - t)) / (1.0 - d);
  const double saving = std::pow(d, K - 1 - t);
  const double rhs = (1.0 - std::pow(d, K - t)) * (b.w(s_prev) - b.w(s_curr)) / (1.0 - d);
  const double pi_curr = b.pi(s_curr);
  const double c_curr = env.C(s_curr);
  auto gap = [&](double x) {
    return benefit * (b.pi(x) - pi_curr) + saving * (c_curr - env.C(x)) - rhs;
  };
  if (gap(s_curr) >= 0.0) return s_curr;
  const double top = gap(1.0);
  // Shortfalls within eps_root of the size of the terms count as rounding.
  const double scale = std::abs(rhs) + benefit * std::abs(b.pi(1.0) - pi_curr) +
                       saving * std::abs(c_curr - env.C(1.0));
  if (top < -eps_root * scale) {
    std::ostringstream os;
    os.precision(12);
    os << "no level in [" << s_curr << ", 1] satisfies the break-even condition at t=" << t
       << " (shortfall " << -top << ")";
    throw NoRoot(os.str());
  }
  if (top <= 0.0) return 1.0;
  return bisect_boundary([&](double x) { return gap(x) >= 0.0; }, 1.0, s_curr);
}

struct ShotResult {
  std::vector<double> sequence;       // levels computed before success or failure
  std::optional<double> terminal_gap;  // 1 - s_K; empty when infeasible
  bool feasible() const { return terminal_gap.has_value(); }
};

/// Applies rbe_step for t = 1..K-1 starting from (s0, s1).
inline ShotResult shoot(const RetirementEnv& env, double s1, double eps_root = kEpsRoot) {
  ShotResult out;
  out.sequence = {env.base().s0(), s1};
  try {
    for (int t = 1; t <= env.K() - 1; ++t)
      out.sequence.push_back(rbe_step(env, out.sequence[t - 1], out.sequence[t], t, eps_root));
  } catch (const NoRoot&) {
    return out;
  }
  out.terminal_gap = 1.0 - out.sequence.back();
  return out;
}

/// Principal's time-0 profit for a contract that binds the incentive
/// constraints: pi(s0) + (d - d^K) pi(s1) / (1-d) - d^{K-1} C(s1).
inline double retirement_profit(const RetirementEnv& env, double s1) {
  const PayoffEnv& b = env.base();
  const double d = b.delta();
  const int K = env.K();
  return b.pi(b.s0()) + (d - std::pow(d, K)) * b.pi(s1) / (1.0 - d) -
         std::pow(d, K - 1) * env.C(s1);
}

/// Frontloaded payments for the retirement contract: p0 = 0,
/// p_t = (1 - d^{K-t}) [w(s_{t-1}) - w(s_t)] / (1-d).
inline std::vector<double> retirement_payments(const RetirementEnv& env,
                                               const std::vector<double>& s) {
  const PayoffEnv& b = env.base();
  const double d = b.delta();
  const int K = env.K();
  std::vector<double> p(static_cast<std::size_t>(K), 0.0);
  for (int t = 1; t < K; ++t)
    p[t] = (1.0 - std::pow(d, K - t)) * (b.w(s[t - 1]) - b.w(s[t])) / (1.0 - d);
  return p;
}

/// Scans s1 over cfg.shoot_points, brackets every point where the shooting
/// map reaches s_K = 1 (an exact zero gap, or a switch between feasible and
/// infeasible shots), refines each bracket by bisection and keeps the
/// largest root.
inline RetirementContract solve_retirement(const RetirementEnv& env, const SolverConfig& cfg = {}) {
  const double s0 = env.base().s0();
  const std::size_t n = std::max<std::size_t>(cfg.shoot_points, 2);
  const double root_tol = 1e-9;

  std::vector<double> roots;
  auto add_root = [&](double r) {
    for (double x : roots)
      if (std::abs(x - r) <= root_tol) return;
    roots.push_back(r);
  };
  auto feasible = [&](double s1) { return shoot(env, s1, cfg.eps_root).feasible(); };

  double prev_x = s0;
  ShotResult prev = shoot(env, s0, cfg.eps_root);
  if (prev.feasible() && *prev.terminal_gap <= root_tol) add_root(s0);
  for (std::size_t i = 1; i < n; ++i) {
    const double x = grid_point(s0, 1.0, i, n);
    ShotResult cur = shoot(env, x, cfg.eps_root);
    if (cur.feasible() && *cur.terminal_gap <= root_tol) add_root(x);
    if (prev.feasible() != cur.feasible()) {
      const double good = prev.feasible() ? prev_x : x;
      const double bad = prev.feasible() ? x : prev_x;
      const double edge = bisect_boundary(feasible, good, bad);
      const ShotResult at = shoot(env, edge, cfg.eps_root);
      if (at.feasible() && *at.terminal_gap <= root_tol) add_root(edge);
    }
    prev_x = x;
    prev = std::move(cur);
  }
  if (roots.empty())
    throw NoContract("no knowledge gift reaches full knowledge at retirement");
  std::sort(roots.begin(), roots.end());

  RetirementContract out;
  out.s1_roots = roots;
  const double s1 = roots.back();
  out.s = shoot(env, s1, cfg.eps_root).sequence;
  out.s.back() = 1.0;
  out.p = retirement_payments(env, out.s);
  out.Pi0R = retirement_profit(env, s1);
  return out;
}

struct CostSweepRow {
  double lambda;
  double s1_star;
  double Pi0R;
};

/// Re-solves with C replaced by lambda * C for each lambda.
inline std::vector<CostSweepRow> cost_scaling_sweep(const RetirementEnv& env,
                                                    const std::vector<double>& lambdas,
                                                    const SolverConfig& cfg = {}) {
  if (!std::is_sorted(lambdas.begin(), lambdas.end()))
    throw BadParams("cost scale factors must be sorted ascending");
  std::vector<CostSweepRow> rows;
  rows.reserve(lambdas.size());
  for (double lambda : lambdas) {
    const RetirementContract rc = solve_retirement(env.with_cost_scale(lambda), cfg);
    rows.push_back({lambda, rc.s[1], rc.Pi0R});
  }
  return rows;
}

}  // namespace relcon

#endif  // RELCON_RETIREMENT_HPP
