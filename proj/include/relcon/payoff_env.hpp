#ifndef RELCON_PAYOFF_ENV_HPP
#define RELCON_PAYOFF_ENV_HPP

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "relcon/errors.hpp"
#include "relcon/monotone_fn.hpp"
#include "relcon/numeric.hpp"

namespace relcon {

inline constexpr std::size_t kValidationGrid = 10001;
inline constexpr double kEpsMono = 1e-12;
inline constexpr double kEpsRoot = 1e-12;

/// Stage payoffs of the principal (pi), the expert (w) and the novice (v) as
/// functions of the novice's knowledge level, plus the common discount factor
/// and the initial knowledge level s0.
class PayoffEnv {
 public:
  /// Builds an environment and certifies the monotonicity assumptions on a
  /// grid; throws AssumptionViolated on the first failure.
  static PayoffEnv make(MonotoneFn pi, MonotoneFn w, MonotoneFn v, double delta,
                        double s0 = 0.0, std::size_t n_grid = kValidationGrid,
                        double eps_mono = kEpsMono);

  /// Only delta and s0 are checked. Used to inspect inputs that are expected
  /// to fail validation.
  static PayoffEnv unchecked(MonotoneFn pi, MonotoneFn w, MonotoneFn v, double delta,
                             double s0 = 0.0) {
    check_delta(delta);
    if (!(s0 >= 0.0 && s0 < 1.0)) throw BadParams("s0 must lie in [0, 1)");
    return PayoffEnv(std::move(pi), std::move(w), std::move(v), delta, s0);
  }

  double pi(double s) const { return pi_(s); }
  double w(double s) const { return w_(s); }
  double v(double s) const { return v_(s); }
  /// Bilateral surplus of principal and expert.
  double G(double s) const { return pi_(s) + w_(s); }
  double delta() const { return delta_; }
  double s0() const { return s0_; }

  const MonotoneFn& pi_fn() const { return pi_; }
  const MonotoneFn& w_fn() const { return w_; }
  const MonotoneFn& v_fn() const { return v_; }

  /// Same stage payoffs under a different discount factor.
  PayoffEnv with_delta(double delta) const {
    check_delta(delta);
    PayoffEnv copy = *this;
    copy.delta_ = delta;
    return copy;
  }

  static void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
      std::ostringstream os;
      os << "discount factor must lie in (0, 1), got " << delta;
      throw BadDelta(os.str());
    }
  }

 private:
  PayoffEnv(MonotoneFn pi, MonotoneFn w, MonotoneFn v, double delta, double s0)
      : pi_(std::move(pi)), w_(std::move(w)), v_(std::move(v)), delta_(delta), s0_(s0) {}

  MonotoneFn pi_;
  MonotoneFn w_;
  MonotoneFn v_;
  double delta_;
  double s0_;
};

struct Violation {
  std::string constraint;  // "pi", "w", "v" or "G"
  double s_a;
  double s_b;
  double f_a;
  double f_b;
};

struct ValidationReport {
  bool passed = true;
  std::vector<Violation> violations;
};

/// Strict monotonicity of pi (up), w (down), v (up) and G = pi + w (up) over
/// every adjacent pair of an n_grid-point grid on [0, 1]. A difference counts
/// as strict only if it exceeds eps_mono.
inline ValidationReport validate_monotonicity(const PayoffEnv& env, std::size_t n_grid,
                                                double eps_mono = kEpsMono) {
  if (n_grid < 2) throw BadParams("validation grid needs at least two points");
  ValidationReport report;
  struct Check {
    const char* name;
    double sign;  // +1 increasing, -1 decreasing
    double (PayoffEnv::*fn)(double) const;
  };
  const Check checks[] = {{"pi", 1.0, &PayoffEnv::pi},
                          {"w", -1.0, &PayoffEnv::w},
                          {"v", 1.0, &PayoffEnv::v},
                          {"G", 1.0, &PayoffEnv::G}};
  for (const auto& c : checks) {
    double s_prev = 0.0;
    double f_prev = (env.*c.fn)(s_prev);
    for (std::size_t i = 1; i < n_grid; ++i) {
      const double s = grid_point(0.0, 1.0, i, n_grid);
      const double f = (env.*c.fn)(s);
      if (!(c.sign * (f - f_prev) > eps_mono))
        report.violations.push_back({c.name, s_prev, s, f_prev, f});
      s_prev = s;
      f_prev = f;
    }
  }
  report.passed = report.violations.empty();
  return report;
}

inline PayoffEnv PayoffEnv::make(MonotoneFn pi, MonotoneFn w, MonotoneFn v, double delta,
                                 double s0, std::size_t n_grid, double eps_mono) {
  PayoffEnv env = unchecked(std::move(pi), std::move(w), std::move(v), delta, s0);
  const ValidationReport report = validate_monotonicity(env, n_grid, eps_mono);
  if (!report.passed) {
    const Violation& v0 = report.violations.front();
    std::ostringstream os;
    os.precision(12);
    os << v0.constraint << " is not strictly "
       << (v0.constraint == std::string("w") ? "decreasing" : "increasing") << " between s="
       << v0.s_a << " and s=" << v0.s_b << " (values " << v0.f_a << ", " << v0.f_b << "); "
       << report.violations.size() << " violating grid pair(s)";
    throw AssumptionViolated(os.str());
  }
  return env;
}

/// The knowledge level s with pi(s) = y, by bisection on [0, 1].
inline double inverse_pi(const PayoffEnv& env, double y, double eps_root = kEpsRoot) {
  const double lo = env.pi(0.0);
  const double hi = env.pi(1.0);
  if (y < lo - eps_root || y > hi + eps_root) {
    std::ostringstream os;
    os.precision(12);
    os << "pi^-1(" << y << ") undefined: pi ranges over [" << lo << ", " << hi << "]";
    throw OutOfRange(os.str());
  }
  if (y <= lo) return 0.0;
  if (y >= hi) return 1.0;
  return invert_increasing([&](double s) { return env.pi(s); }, y, 0.0, 1.0);
}

inline PayoffEnv make_polynomial_env(std::vector<double> pi_coeffs, std::vector<double> w_coeffs,
                                     std::vector<double> v_coeffs, double delta,
                                     double s0 = 0.0) {
  PayoffEnv::check_delta(delta);
  return PayoffEnv::make(MonotoneFn::polynomial(std::move(pi_coeffs), Direction::increasing),
                         MonotoneFn::polynomial(std::move(w_coeffs), Direction::decreasing),
                         MonotoneFn::polynomial(std::move(v_coeffs), Direction::increasing),
                         delta, s0);
}

// Closed forms of the three microfounded stage games.
namespace micro {

/// Task shares in the apprenticeship model with K(q-p)=1 and g(s)=(1+s)/2.
struct TaskShares {
  double expert;
  double novice;
};

inline TaskShares apprenticeship_shares(double s) { return {(3.0 - s) / 4.0, (1.0 + s) / 4.0}; }

/// Cournot duopoly with inverse demand A - q1 - q2, per-unit tax beta and
/// marginal costs 0 (incumbent) and 1 - s (entrant).
struct CournotOutcome {
  double q1;
  double q2;
  double tax;
  double consumer_surplus;
};

inline CournotOutcome cournot_outcome(double A, double beta, double s) {
  const double gap = 1.0 - s;
  const double q1 = (A - beta + gap) / 3.0;
  const double q2 = (A - beta - 2.0 * gap) / 3.0;
  const double total = (2.0 * (A - beta) - gap) / 3.0;
  return {q1, q2, beta * total, 0.5 * total * total};
}

/// Differentiated Bertrand duopoly with demand shifter 1 - s and profit tax gamma.
struct BertrandOutcome {
  double p1;
  double p2;
  double tax;
  double consumer_surplus;
};

inline BertrandOutcome bertrand_outcome(double A, double gamma, double s) {
  const double gap = 1.0 - s;
  const double m1 = 5.0 * A + 2.0 * gap;
  const double m2 = 5.0 * A - 7.0 * gap;
  return {m1 / 15.0, m2 / 15.0, 2.0 * gamma * (m1 * m1 + m2 * m2) / 225.0,
          (100.0 * A * A - 100.0 * A * gap + 52.0 * gap * gap) / 225.0};
}

}  // namespace micro

/// Firm, expert and novice payoffs of the within-firm apprenticeship model
/// (effort success probabilities p < q, normalization K = 1/(q - p)).
inline PayoffEnv make_apprenticeship_env(double p, double q, double delta) {
  if (!(p > 0.0 && q > 2.0 * p && q <= 1.0)) {
    std::ostringstream os;
    os << "apprenticeship model requires 0 < 2p < q <= 1, got p=" << p << ", q=" << q;
    throw BadParams(os.str());
  }
  PayoffEnv::check_delta(delta);
  const double K = 1.0 / (q - p);
  const std::map<std::string, double> params{{"p", p}, {"q", q}, {"K", K}};
  auto pi = MonotoneFn::composite(
      "apprenticeship.pi", params,
      [K, q](double s) { return K * q * (s * s + 2.0 * s + 9.0) / 16.0; }, Direction::increasing);
  auto w = MonotoneFn::composite(
      "apprenticeship.w", params,
      [K, p](double s) { return K * p * (3.0 - s) * (3.0 - s) / 32.0; }, Direction::decreasing);
  auto v = MonotoneFn::composite(
      "apprenticeship.v", params,
      [K, p](double s) { return K * p * (1.0 + s) * (1.0 + s) / 32.0; }, Direction::increasing);
  return PayoffEnv::make(std::move(pi), std::move(w), std::move(v), delta);
}

/// Government (tax + consumer surplus), incumbent and entrant payoffs under
/// Cournot competition.
inline PayoffEnv make_cournot_env(double A, double beta, double delta) {
  if (!(beta >= 1.0)) throw BadParams("Cournot model requires beta >= 1");
  if (!(A >= 2.0 + beta)) throw BadParams("Cournot model requires A >= 2 + beta");
  PayoffEnv::check_delta(delta);
  const std::map<std::string, double> params{{"A", A}, {"beta", beta}};
  auto pi = MonotoneFn::composite(
      "cournot.pi", params,
      [A, beta](double s) {
        const auto o = micro::cournot_outcome(A, beta, s);
        return o.tax + o.consumer_surplus;
      },
      Direction::increasing);
  auto w = MonotoneFn::composite(
      "cournot.w", params,
      [A, beta](double s) {
        const double q1 = micro::cournot_outcome(A, beta, s).q1;
        return q1 * q1;
      },
      Direction::decreasing);
  auto v = MonotoneFn::composite(
      "cournot.v", params,
      [A, beta](double s) {
        const double q2 = micro::cournot_outcome(A, beta, s).q2;
        return q2 * q2;
      },
      Direction::increasing);
  return PayoffEnv::make(std::move(pi), std::move(w), std::move(v), delta);
}

/// Government, incumbent and entrant payoffs under differentiated Bertrand
/// competition.
inline PayoffEnv make_bertrand_env(double A, double gamma, double delta) {
  if (!(A >= 2.0)) throw BadParams("Bertrand model requires A >= 2");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw BadParams("Bertrand model requires gamma in [0, 1)");
  PayoffEnv::check_delta(delta);
  const std::map<std::string, double> params{{"A", A}, {"gamma", gamma}};
  auto pi = MonotoneFn::composite(
      "bertrand.pi", params,
      [A, gamma](double s) {
        const auto o = micro::bertrand_outcome(A, gamma, s);
        return o.tax + o.consumer_surplus;
      },
      Direction::increasing);
  auto w = MonotoneFn::composite(
      "bertrand.w", params,
      [A, gamma](double s) {
        const double m1 = 5.0 * A + 2.0 * (1.0 - s);
        return 2.0 * (1.0 - gamma) * m1 * m1 / 225.0;
      },
      Direction::decreasing);
  auto v = MonotoneFn::composite(
      "bertrand.v", params,
      [A, gamma](double s) {
        const double m2 = 5.0 * A - 7.0 * (1.0 - s);
        return 2.0 * (1.0 - gamma) * m2 * m2 / 225.0;
      },
      Direction::increasing);
  return PayoffEnv::make(std::move(pi), std::move(w), std::move(v), delta);
}

}  // namespace relcon

#endif  // RELCON_PAYOFF_ENV_HPP
