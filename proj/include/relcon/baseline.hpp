#ifndef RELCON_BASELINE_HPP
#define RELCON_BASELINE_HPP

// The profit-maximizing infinite-horizon contract: long-run knowledge level,
// period-0 knowledge gift, break-even recursion, frontloaded payments,
// discount-factor thresholds and the Pareto frontier.

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "relcon/errors.hpp"
#include "relcon/numeric.hpp"
#include "relcon/payoff_env.hpp"
#include "relcon/solver_config.hpp"

namespace relcon {

/// A contract: knowledge levels s[0..T] (s[0] = s0) with payments p[0..T].
/// The path continues beyond T toward s_limit; `truncated` records that the
/// recursion was cut by the period cap rather than by convergence.
struct ContractPath {
  std::vector<double> s;
  std::vector<double> p;
  double s_limit = 0.0;
  bool truncated = false;

  std::size_t horizon() const { return s.empty() ? 0 : s.size() - 1; }
};

struct OptimalContract {
  ContractPath path;
  double sbar_star = 0.0;  // smallest maximizer of delta*pi + w
  double s1_star = 0.0;    // knowledge level after the period-0 gift
  double M_star = 0.0;     // max of delta*pi + w
  double Pi0 = 0.0;
  double W0 = 0.0;
  bool trivial = false;
};

struct FrontierPoint {
  double p0;
  double Pi0;
  double W0;
};

struct SmallestMaximizer {
  double sbar_star;
  double M_star;
};

/// Smallest maximizer of delta*pi(s) + w(s) on [s0, 1].
inline SmallestMaximizer smallest_maximizer(const PayoffEnv& env, const SolverConfig& cfg = {}) {
  const double d = env.delta();
  const Extremum e = smallest_maximizer_on(
      [&](double s) { return d * env.pi(s) + env.w(s); }, env.s0(), cfg.scan_points, cfg.eps_val);
  return {e.arg, e.value};
}

/// s1* = pi^-1((M* - w(s0)) / delta); equals s0 when the long-run level is s0.
inline double knowledge_gift(const PayoffEnv& env, double sbar_star, double M_star,
                             double eps_root = kEpsRoot) {
  const double s0 = env.s0();
  if (sbar_star <= s0) return s0;
  const double y = std::max((M_star - env.w(s0)) / env.delta(), env.pi(s0));
  const double s1 = inverse_pi(env, y, eps_root);
  return std::clamp(s1, s0, sbar_star);
}

/// Next knowledge level from the break-even condition
///   delta [pi(s_next) - pi(s_curr)] = w(s_prev) - w(s_curr).
inline double be_step(const PayoffEnv& env, double s_prev, double s_curr,
                      double eps_root = kEpsRoot) {
  const double y = env.pi(s_curr) + (env.w(s_prev) - env.w(s_curr)) / env.delta();
  if (y > env.pi(1.0) + eps_root) {
    std::ostringstream os;
    os.precision(12);
    os << "break-even step from (" << s_prev << ", " << s_curr << ") needs pi(s) = " << y
       << " > pi(1) = " << env.pi(1.0);
    throw NoSolution(os.str());
  }
  return std::max(s_curr, inverse_pi(env, y, eps_root));
}

namespace detail {

// Smallest s >= s1 with delta*pi(s) + w(s) reaching `level`. When `level` is
// the maximum of the function on [s1, 1] the crossing is the smallest
// maximizer, located by the same grid search as smallest_maximizer.
inline double level_crossing(const PayoffEnv& env, double s1, double level,
                             const SolverConfig& cfg) {
  const double d = env.delta();
  auto f = [&](double s) { return d * env.pi(s) + env.w(s); };
  if (f(s1) >= level) return s1;
  const Extremum top = smallest_maximizer_on(f, s1, cfg.scan_points, cfg.eps_val);
  if (top.value <= level + cfg.eps_val) {
    if (top.value < level - cfg.eps_val) {
      std::ostringstream os;
      os.precision(12);
      os << "level " << level << " exceeds max of delta*pi + w on [" << s1 << ", 1] ("
         << top.value << ")";
      throw NoSolution(os.str());
    }
    return top.arg;
  }
  double prev = s1;
  for (std::size_t i = 0; i < cfg.scan_points; ++i) {
    const double x = grid_point(0.0, 1.0, i, cfg.scan_points);
    if (x <= s1) continue;
    if (f(x) >= level)
      return bisect_boundary([&](double s) { return f(s) >= level; }, x, prev);
    prev = x;
  }
  return top.arg;  // unreachable: top.value > level on the grid
}

}  // namespace detail

/// Runs the break-even recursion from (s0, s1) until the step falls below
/// cfg.eps_step or the prefix reaches cfg.max_periods. Payments are left
/// empty; see frontload_payments.
inline ContractPath generate_sequence(const PayoffEnv& env, double s1, const SolverConfig& cfg = {}) {
  const double s0 = env.s0();
  if (!(s1 >= s0 && s1 <= 1.0)) throw OutOfRange("s1 must lie in [s0, 1]");
  ContractPath path;
  path.s = {s0, s1};
  if (s1 == s0) {
    path.s_limit = s0;
    return path;
  }
  while (true) {
    const std::size_t t = path.s.size() - 1;
    if (t >= cfg.max_periods) {
      path.truncated = true;
      break;
    }
    const double next = be_step(env, path.s[t - 1], path.s[t], cfg.eps_root);
    if (next - path.s[t] < cfg.eps_step) break;
    path.s.push_back(next);
  }
  const double level = env.delta() * env.pi(s1) + env.w(s0);
  path.s_limit = std::max(detail::level_crossing(env, s1, level, cfg), path.s.back());
  return path;
}

/// Frontloaded payments: p0 = 0, p_t = [w(s_{t-1}) - w(s_t)] / (1 - delta).
inline ContractPath frontload_payments(const PayoffEnv& env, ContractPath path) {
  const double d = env.delta();
  path.p.assign(path.s.size(), 0.0);
  for (std::size_t t = 1; t < path.s.size(); ++t)
    path.p[t] = (env.w(path.s[t - 1]) - env.w(path.s[t])) / (1.0 - d);
  return path;
}

/// Profit-maximizing contract.
inline OptimalContract solve_optimal(const PayoffEnv& env, const SolverConfig& cfg = {}) {
  OptimalContract out;
  const double d = env.delta();
  const double s0 = env.s0();
  const SmallestMaximizer sm = smallest_maximizer(env, cfg);
  out.sbar_star = sm.sbar_star;
  out.M_star = sm.M_star;
  out.W0 = env.w(s0) / (1.0 - d);
  out.trivial = sm.sbar_star <= s0;
  if (out.trivial) {
    out.s1_star = s0;
    out.path.s = {s0};
    out.path.p = {0.0};
    out.path.s_limit = s0;
    out.Pi0 = env.pi(s0) / (1.0 - d);
    return out;
  }
  out.s1_star = knowledge_gift(env, sm.sbar_star, sm.M_star, cfg.eps_root);
  out.path = frontload_payments(env, generate_sequence(env, out.s1_star, cfg));
  out.Pi0 = env.pi(s0) + d * env.pi(out.s1_star) / (1.0 - d);
  return out;
}

struct DeltaThresholds {
  double delta_low;   // sup{delta : sbar*(delta) = s0}
  double delta_high;  // inf{delta : sbar*(delta) = 1}
};

/// Patience thresholds by bisection on the monotone indicators
/// "sbar* = s0" and "sbar* = 1". `env_at` must return the same stage payoffs
/// under the requested discount factor.
inline DeltaThresholds delta_thresholds(const std::function<PayoffEnv(double)>& env_at,
                                        double tol, const SolverConfig& cfg = {}) {
  auto sbar = [&](double d) {
    const PayoffEnv e = env_at(d);
    return std::pair{smallest_maximizer(e, cfg).sbar_star, e.s0()};
  };
  auto at_zero = [&](double d) {
    auto [s, s0] = sbar(d);
    return s <= s0;
  };
  auto at_one = [&](double d) { return sbar(d).first >= 1.0; };

  const double lo = tol;
  const double hi = 1.0 - tol;
  auto boundary = [&](auto&& pred, double a, double b) {
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      if (pred(mid))
        a = mid;
      else
        b = mid;
    }
    return 0.5 * (a + b);
  };

  DeltaThresholds out{};
  // "sbar* = s0" holds on a lower interval of delta.
  if (!at_zero(lo))
    out.delta_low = 0.0;
  else if (at_zero(hi))
    out.delta_low = 1.0;
  else
    out.delta_low = boundary(at_zero, lo, hi);
  // "sbar* = 1" holds on an upper interval of delta.
  if (!at_one(hi))
    out.delta_high = 1.0;
  else if (at_one(lo))
    out.delta_high = 0.0;
  else
    out.delta_high = boundary([&](double d) { return !at_one(d); }, lo, hi);
  return out;
}

/// Limit of the knowledge gift as delta -> 1: pi^-1(pi(1) + w(1) - w(s0)).
inline double patience_limit_gift(const PayoffEnv& env) {
  return inverse_pi(env, env.pi(1.0) + env.w(1.0) - env.w(env.s0()));
}

/// Pareto-efficient contracts share the optimal knowledge path and differ in
/// the up-front payment p0 in [0, delta (pi(s1*) - pi(s0)) / (1 - delta)].
inline std::vector<FrontierPoint> pareto_frontier(const PayoffEnv& env, const OptimalContract& opt,
                                                  std::size_t n_points) {
  if (opt.trivial) throw TrivialContract("the trivial contract has a single-point frontier");
  if (n_points == 0) throw BadParams("n_points must be positive");
  const double d = env.delta();
  const double bound = d * (env.pi(opt.s1_star) - env.pi(env.s0())) / (1.0 - d);
  std::vector<FrontierPoint> out;
  out.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double p0 = grid_point(0.0, bound, i, n_points);
    out.push_back({p0, opt.Pi0 - p0, opt.W0 + p0});
  }
  return out;
}

}  // namespace relcon

#endif  // RELCON_BASELINE_HPP
