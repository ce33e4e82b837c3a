#ifndef RELCON_ORACLE_HPP
#define RELCON_ORACLE_HPP

// Exhaustive search over nondecreasing knowledge sequences on a uniform grid.
// Small instances only; provides ground truth for the solvers.

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <vector>

#include "relcon/errors.hpp"
#include "relcon/payoff_env.hpp"
#include "relcon/retirement.hpp"

namespace relcon {

struct GridSpec {
  std::size_t m = 21;  // knowledge levels k/(m-1), k = 0..m-1
  std::size_t T = 4;   // enumerated periods

  double step() const { return 1.0 / static_cast<double>(m - 1); }
  double level(std::size_t k) const { return grid_point(0.0, 1.0, k, m); }
};

/// Number of nondecreasing sequences of length `len` over `levels` values:
/// C(len + levels - 1, len). Saturates at the maximum of uint64.
inline std::uint64_t monotone_sequence_count(std::size_t levels, std::size_t len) {
  long double acc = 1.0L;
  for (std::size_t i = 1; i <= len; ++i)
    acc = acc * static_cast<long double>(levels - 1 + i) / static_cast<long double>(i);
  const auto cap = static_cast<long double>(std::numeric_limits<std::uint64_t>::max());
  return acc >= cap ? std::numeric_limits<std::uint64_t>::max()
                    : static_cast<std::uint64_t>(std::llround(acc));
}

struct Envelope {
  std::vector<double> max_level;                // index t-1 holds the max of s_t
  std::vector<std::vector<double>> argmax;      // lexicographically smallest witness per t
  std::uint64_t enumerated = 0;
  std::uint64_t passing = 0;
};

namespace detail {

// Calls visit(seq) for every nondecreasing sequence of grid indices of length
// `len` with entries >= first, in lexicographic order.
template <typename Visit>
void for_each_monotone(std::size_t levels, std::size_t len, std::size_t first, Visit&& visit) {
  std::vector<std::size_t> idx(len, first);
  if (len == 0 || first >= levels) return;
  while (true) {
    visit(idx);
    std::size_t pos = len;
    while (pos > 0 && idx[pos - 1] + 1 >= levels) --pos;
    if (pos == 0) return;
    const std::size_t v = idx[pos - 1] + 1;
    for (std::size_t j = pos - 1; j < len; ++j) idx[j] = v;
  }
}

inline void check_cap(std::uint64_t count, std::size_t cap) {
  if (count > cap) {
    std::ostringstream os;
    os << "enumeration of " << count << " sequences exceeds the cap of " << cap;
    throw CapExceeded(os.str());
  }
}

// First grid index not below s0.
inline std::size_t first_index(const GridSpec& g, double s0) {
  std::size_t k = 0;
  while (k < g.m && g.level(k) < s0) ++k;
  return k;
}

}  // namespace detail

/// For each t = 1..T, the largest s_t over grid sequences (s_1..s_T) that,
/// held at s_T forever and paired with frontloaded payments, satisfy the
/// summed incentive constraint at every t = 1..T.
inline Envelope enumerate_envelope(const PayoffEnv& env, const GridSpec& grid,
                                   std::size_t cap = 5000000, double tol = 1e-12) {
  if (grid.m < 2 || grid.T < 1) throw BadParams("oracle grid needs m >= 2 and T >= 1");
  const std::size_t first = detail::first_index(grid, env.s0());
  const std::uint64_t count = monotone_sequence_count(grid.m - first, grid.T);
  detail::check_cap(count, cap);

  const double d = env.delta();
  const std::size_t T = grid.T;
  std::vector<double> levels(grid.m), pi(grid.m), w(grid.m), G(grid.m);
  for (std::size_t k = 0; k < grid.m; ++k) {
    levels[k] = grid.level(k);
    pi[k] = env.pi(levels[k]);
    w[k] = env.w(levels[k]);
    G[k] = pi[k] + w[k];
  }
  const double w0 = env.w(env.s0());

  Envelope out;
  out.max_level.assign(T, -INFINITY);
  out.argmax.assign(T, {});
  std::vector<double> surplus(T + 1);
  detail::for_each_monotone(grid.m, T, first, [&](const std::vector<std::size_t>& idx) {
    ++out.enumerated;
    // surplus[t] = sum_{tau >= t} d^{tau-t} G(s_tau) for t = 1..T (1-based).
    surplus[T] = G[idx[T - 1]] / (1.0 - d);
    for (std::size_t t = T - 1; t >= 1; --t) surplus[t] = G[idx[t - 1]] + d * surplus[t + 1];
    for (std::size_t t = 1; t <= T; ++t) {
      const double prev_w = t == 1 ? w0 : w[idx[t - 2]];
      const double rhs = (pi[idx[t - 1]] + prev_w) / (1.0 - d);
      if (surplus[t] < rhs - tol * std::max(1.0, std::abs(rhs))) return;
    }
    ++out.passing;
    for (std::size_t t = 0; t < T; ++t) {
      if (levels[idx[t]] > out.max_level[t]) {
        out.max_level[t] = levels[idx[t]];
        out.argmax[t].clear();
        out.argmax[t].push_back(env.s0());
        for (std::size_t k : idx) out.argmax[t].push_back(levels[k]);
      }
    }
  });
  return out;
}

struct RetirementOracleResult {
  double best_profit = -INFINITY;
  std::vector<double> best_sequence;  // s_0..s_K
  std::vector<double> best_payments;  // p_0..p_{K-1}
  std::uint64_t enumerated = 0;
  std::uint64_t passing = 0;
};

/// Best raw profit sum_t d^t [pi(s_t) - p_t] - d^{K-1} C(s_K) over grid
/// sequences (s_1..s_K) with frontloaded payments that satisfy both
/// finite-horizon incentive constraints. Ties keep the lexicographically
/// smallest sequence.
inline RetirementOracleResult oracle_retirement(const RetirementEnv& env, std::size_t m,
                                                std::size_t cap = 5000000, double tol = 1e-12) {
  if (m < 2) throw BadParams("oracle grid needs m >= 2");
  const PayoffEnv& b = env.base();
  const int K = env.K();
  const auto Ku = static_cast<std::size_t>(K);
  const GridSpec grid{m, Ku};
  const std::size_t first = detail::first_index(grid, b.s0());
  detail::check_cap(monotone_sequence_count(m - first, Ku), cap);

  const double d = b.delta();
  std::vector<double> dpow(Ku + 1, 1.0);
  for (std::size_t k = 1; k <= Ku; ++k) dpow[k] = dpow[k - 1] * d;

  RetirementOracleResult best;
  std::vector<double> s(Ku + 1), p(Ku), Pi(Ku + 1), W(Ku + 1);
  s[0] = b.s0();
  detail::for_each_monotone(m, Ku, first, [&](const std::vector<std::size_t>& idx) {
    ++best.enumerated;
    for (std::size_t k = 0; k < Ku; ++k) s[k + 1] = grid.level(idx[k]);
    p[0] = 0.0;
    for (std::size_t t = 1; t < Ku; ++t)
      p[t] = (1.0 - dpow[Ku - t]) * (b.w(s[t - 1]) - b.w(s[t])) / (1.0 - d);

    const double cK = env.C(s[Ku]);
    Pi[Ku] = 0.0;
    W[Ku] = 0.0;
    for (std::size_t k = Ku; k-- > 0;) {
      Pi[k] = b.pi(s[k]) - p[k] + d * Pi[k + 1];
      W[k] = b.w(s[k]) + p[k] + d * W[k + 1];
    }
    for (std::size_t t = 0; t < Ku; ++t) {
      const double lhs = Pi[t] - dpow[Ku - 1 - t] * cK;
      const double rhs = (1.0 - dpow[Ku - t]) * b.pi(s[t]) / (1.0 - d) -
                         dpow[Ku - 1 - t] * env.C(s[t]);
      if (lhs < rhs - tol * std::max(1.0, std::abs(rhs))) return;
    }
    for (std::size_t t = 0; t + 2 <= Ku; ++t) {
      const double rhs = (1.0 - dpow[Ku - t - 1]) * b.w(s[t]) / (1.0 - d);
      if (W[t + 1] < rhs - tol * std::max(1.0, std::abs(rhs))) return;
    }
    ++best.passing;
    double profit = -dpow[Ku - 1] * cK;
    for (std::size_t t = 0; t < Ku; ++t) profit += dpow[t] * (b.pi(s[t]) - p[t]);
    if (profit > best.best_profit) {
      best.best_profit = profit;
      best.best_sequence = s;
      best.best_payments = p;
    }
  });
  return best;
}

}  // namespace relcon

#endif  // RELCON_ORACLE_HPP
