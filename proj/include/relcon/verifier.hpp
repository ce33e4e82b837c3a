#ifndef RELCON_VERIFIER_HPP
#define RELCON_VERIFIER_HPP

// Independent implementability checks. Continuation values are summed
// directly from a contract's knowledge and payment sequences; nothing here
// relies on the break-even recursions used by the solvers.
//
// Infinite paths are known up to period T and are assumed to continue
// monotonically toward s_limit with frontloaded payments. The unknown tail
// therefore enters every continuation value as an interval:
//   stage payoffs   x(s_tau) in [x(s_T), x(s_limit)] for increasing x
//   tail payments   sum of p_tau in [0, (w(s_T) - w(s_limit)) / (1 - delta)]

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "relcon/baseline.hpp"
#include "relcon/payoff_env.hpp"
#include "relcon/retirement.hpp"

namespace relcon {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x, double tol = 0.0) const { return lo - tol <= x && x <= hi + tol; }
  Interval operator+(double c) const { return {lo + c, hi + c}; }
  Interval operator-(double c) const { return {lo - c, hi - c}; }
  Interval operator*(double c) const {  // c >= 0
    return {lo * c, hi * c};
  }
};

enum class Verdict { implementable, violated, indeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::implementable: return "implementable";
    case Verdict::violated: return "violated";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

struct PeriodSlack {
  std::size_t t;
  std::optional<Interval> pic;  // principal incentive constraint
  std::optional<Interval> eic;  // expert incentive constraint
  std::optional<Interval> sic;  // summed (surplus) constraint
};

struct ICReport {
  bool feasibility_ok = true;
  std::vector<PeriodSlack> per_period;
  double min_slack = 0.0;
  Verdict verdict = Verdict::implementable;
  std::string constraint;  // first offending constraint when not implementable
  std::size_t t = 0;       // period of the first offending constraint
};

struct VerifyOptions {
  double tol = 1e-8;
  /// Last period to report. Empty: the largest period whose tail brackets
  /// are narrower than tol. Periods past the known prefix are only reported
  /// when the tail is constant.
  std::optional<std::size_t> horizon;
};

namespace detail {

struct Continuations {
  std::vector<Interval> Pi;  // Pi_t, t = 0..T+1
  std::vector<Interval> W;   // W_t, t = 0..T+1
  std::vector<Interval> S;   // sum_{tau >= t} d^{tau-t} G(s_tau), t = 0..T+1
  std::vector<double> s;     // path, extended if the tail is constant
};

inline Continuations continuation_values(const PayoffEnv& env, const ContractPath& path,
                                         std::size_t min_len) {
  Continuations c;
  c.s = path.s;
  std::vector<double> p = path.p;
  p.resize(c.s.size(), 0.0);
  if (path.s_limit == c.s.back()) {
    while (c.s.size() < min_len) {
      c.s.push_back(c.s.back());
      p.push_back(0.0);
    }
  }
  const double d = env.delta();
  const double sT = c.s.back();
  const double sL = std::max(path.s_limit, sT);
  const double tail_pay = (env.w(sT) - env.w(sL)) / (1.0 - d);
  const std::size_t n = c.s.size();
  c.Pi.resize(n + 1);
  c.W.resize(n + 1);
  c.S.resize(n + 1);
  c.Pi[n] = {env.pi(sT) / (1.0 - d) - tail_pay, env.pi(sL) / (1.0 - d)};
  c.W[n] = {env.w(sL) / (1.0 - d), env.w(sT) / (1.0 - d) + tail_pay};
  c.S[n] = {env.G(sT) / (1.0 - d), env.G(sL) / (1.0 - d)};
  for (std::size_t k = n; k-- > 0;) {
    c.Pi[k] = c.Pi[k + 1] * d + (env.pi(c.s[k]) - p[k]);
    c.W[k] = c.W[k + 1] * d + (env.w(c.s[k]) + p[k]);
    c.S[k] = c.S[k + 1] * d + env.G(c.s[k]);
  }
  return c;
}

// Folds one slack interval into the running verdict. Earlier (t, constraint)
// pairs take precedence.
inline void classify(ICReport& r, const Interval& slack, const char* name, std::size_t t,
                     double tol) {
  r.min_slack = std::min(r.min_slack, slack.lo);
  if (r.verdict == Verdict::violated) return;
  if (slack.hi < -tol) {
    r.verdict = Verdict::violated;
    r.constraint = name;
    r.t = t;
  } else if (slack.lo < -tol && r.verdict == Verdict::implementable) {
    r.verdict = Verdict::indeterminate;
    r.constraint = name;
    r.t = t;
  }
}

inline bool check_feasibility(ICReport& r, const std::vector<double>& s,
                              const std::vector<double>& p, double s_limit, double tol) {
  for (std::size_t t = 0; t < s.size(); ++t) {
    const bool in_range = s[t] >= 0.0 && s[t] <= 1.0;
    const bool monotone = t == 0 || s[t] >= s[t - 1];
    if (!in_range || !monotone) {
      r.feasibility_ok = false;
      r.verdict = Verdict::violated;
      r.constraint = "M";
      r.t = t;
      return false;
    }
  }
  if (!s.empty() && (s_limit < s.back() || s_limit > 1.0)) {
    r.feasibility_ok = false;
    r.verdict = Verdict::violated;
    r.constraint = "M";
    r.t = s.size() - 1;
    return false;
  }
  for (std::size_t t = 0; t < p.size(); ++t) {
    if (p[t] < -tol) {
      r.feasibility_ok = false;
      r.verdict = Verdict::violated;
      r.constraint = "LL";
      r.t = t;
      return false;
    }
  }
  return true;
}

inline std::size_t auto_horizon(const Continuations& c, double tol) {
  std::size_t h = 0;
  for (std::size_t t = 0; t + 1 < c.Pi.size(); ++t) {
    const double width = std::max({c.Pi[t].width(), c.W[t + 1].width(), c.S[t].width()});
    if (width > tol) break;
    h = t;
  }
  return h;
}

}  // namespace detail

/// Checks monotonicity, limited liability and both incentive constraints
///   Pi_t >= pi(s_t) / (1-d),  W_{t+1} >= w(s_t) / (1-d)
/// for every reported period. Summed-constraint slacks are reported alongside
/// but do not affect the verdict.
inline ICReport check_contract(const PayoffEnv& env, const ContractPath& path,
                               const VerifyOptions& opt = {}) {
  ICReport r;
  if (path.s.empty()) throw BadParams("contract path is empty");
  if (!detail::check_feasibility(r, path.s, path.p, path.s_limit, opt.tol)) return r;

  const std::size_t want = opt.horizon.value_or(0) + 1;
  const detail::Continuations c = detail::continuation_values(env, path, want);
  const std::size_t last = c.s.size() - 1;
  const std::size_t horizon =
      std::min(opt.horizon.value_or(detail::auto_horizon(c, opt.tol)), last);
  const double d = env.delta();

  r.min_slack = INFINITY;
  for (std::size_t t = 0; t <= horizon; ++t) {
    PeriodSlack row{t, {}, {}, {}};
    row.pic = c.Pi[t] - env.pi(c.s[t]) / (1.0 - d);
    row.eic = c.W[t + 1] - env.w(c.s[t]) / (1.0 - d);
    if (t >= 1) row.sic = c.S[t] - (env.pi(c.s[t]) + env.w(c.s[t - 1])) / (1.0 - d);
    detail::classify(r, *row.pic, "P-IC", t, opt.tol);
    detail::classify(r, *row.eic, "E-IC", t, opt.tol);
    r.per_period.push_back(row);
  }
  return r;
}

/// Summed constraint
///   sum_{tau >= t} d^{tau-t} G(s_tau) >= [pi(s_t) + w(s_{t-1})] / (1-d),  t >= 1,
/// with its own verdict.
inline ICReport check_sic(const PayoffEnv& env, const ContractPath& path,
                          const VerifyOptions& opt = {}) {
  ICReport r;
  if (path.s.empty()) throw BadParams("contract path is empty");
  if (!detail::check_feasibility(r, path.s, path.p, path.s_limit, opt.tol)) return r;
  const std::size_t want = opt.horizon.value_or(0) + 1;
  const detail::Continuations c = detail::continuation_values(env, path, want);
  const std::size_t last = c.s.size() - 1;
  const std::size_t horizon =
      std::min(opt.horizon.value_or(detail::auto_horizon(c, opt.tol)), last);
  const double d = env.delta();
  r.min_slack = INFINITY;
  for (std::size_t t = 1; t <= horizon; ++t) {
    PeriodSlack row{t, {}, {}, {}};
    row.sic = c.S[t] - (env.pi(c.s[t]) + env.w(c.s[t - 1])) / (1.0 - d);
    detail::classify(r, *row.sic, "S-IC", t, opt.tol);
    r.per_period.push_back(row);
  }
  if (r.per_period.empty()) r.min_slack = 0.0;
  return r;
}

enum class Player { principal, expert };

enum class Profitability { no, yes, indeterminate };

struct DeviationResult {
  Player player;
  std::size_t t;
  Interval onpath_value;
  Interval deviation_value;
  Profitability profitable;

  /// Worst-case advantage of compliance.
  double margin() const { return onpath_value.lo - deviation_value.hi; }
};

/// One-shot default at period t followed by the inactive equilibrium.
/// Principal: Pi_t on path against pi(s_t)/(1-d).
/// Expert: having pocketed p_t, W_{t+1} on path against w(s_t)/(1-d).
/// Ties within tol count as compliance.
inline DeviationResult simulate_deviation(const PayoffEnv& env, const ContractPath& path,
                                          Player player, std::size_t t, double tol = 1e-8) {
  const detail::Continuations c = detail::continuation_values(env, path, t + 1);
  if (t >= c.s.size()) throw OutOfRange("deviation period lies beyond the contract prefix");
  const double d = env.delta();
  DeviationResult out{player, t, {}, {}, Profitability::no};
  if (player == Player::principal) {
    out.onpath_value = c.Pi[t];
    const double dev = env.pi(c.s[t]) / (1.0 - d);
    out.deviation_value = {dev, dev};
  } else {
    out.onpath_value = c.W[t + 1];
    const double dev = env.w(c.s[t]) / (1.0 - d);
    out.deviation_value = {dev, dev};
  }
  if (out.deviation_value.hi <= out.onpath_value.lo + tol)
    out.profitable = Profitability::no;
  else if (out.deviation_value.lo > out.onpath_value.hi + tol)
    out.profitable = Profitability::yes;
  else
    out.profitable = Profitability::indeterminate;
  return out;
}

/// Finite-horizon constraints, evaluated with exact sums (degenerate
/// intervals):
///   Pi^R_t >= (1 - d^{K-t}) pi(s_t)/(1-d) - d^{K-1-t} C(s_t),  t in [0, K-1]
///   W^R_{t+1} >= (1 - d^{K-t-1}) w(s_t)/(1-d),                 t in [0, K-2]
inline ICReport check_retirement_contract(const RetirementEnv& env, const RetirementContract& rc,
                                          double tol = 1e-8) {
  const int K = env.K();
  const auto Ku = static_cast<std::size_t>(K);
  if (rc.s.size() != Ku + 1 || rc.p.size() != Ku)
    throw BadParams("retirement contract needs K+1 knowledge levels and K payments");
  ICReport r;
  if (!detail::check_feasibility(r, rc.s, rc.p, rc.s.back(), tol)) return r;

  const PayoffEnv& b = env.base();
  const double d = b.delta();
  const double cK = env.C(rc.s[Ku]);
  // Backward sums: Pi_t = pi(s_t) - p_t + d Pi_{t+1}, Pi_{K-1} includes -C(s_K).
  std::vector<double> Pi(Ku + 1, 0.0), W(Ku + 1, 0.0);
  for (std::size_t k = Ku; k-- > 0;) {
    Pi[k] = b.pi(rc.s[k]) - rc.p[k] + d * Pi[k + 1];
    W[k] = b.w(rc.s[k]) + rc.p[k] + d * W[k + 1];
  }
  r.min_slack = INFINITY;
  for (int t = 0; t < K; ++t) {
    const auto tu = static_cast<std::size_t>(t);
    PeriodSlack row{tu, {}, {}, {}};
    const double pi_t = Pi[tu] - std::pow(d, K - 1 - t) * cK;
    const double pic_rhs = (1.0 - std::pow(d, K - t)) * b.pi(rc.s[tu]) / (1.0 - d) -
                           std::pow(d, K - 1 - t) * env.C(rc.s[tu]);
    row.pic = Interval{pi_t - pic_rhs, pi_t - pic_rhs};
    detail::classify(r, *row.pic, "R-P-IC", tu, tol);
    if (t <= K - 2) {
      const double eic = W[tu + 1] - (1.0 - std::pow(d, K - t - 1)) * b.w(rc.s[tu]) / (1.0 - d);
      row.eic = Interval{eic, eic};
      detail::classify(r, *row.eic, "R-E-IC", tu, tol);
    }
    r.per_period.push_back(row);
  }
  return r;
}

}  // namespace relcon

#endif  // RELCON_VERIFIER_HPP
