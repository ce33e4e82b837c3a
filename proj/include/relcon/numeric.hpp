#ifndef RELCON_NUMERIC_HPP
#define RELCON_NUMERIC_HPP

// One-dimensional search primitives on closed intervals: bisection on
// monotone predicates, inversion of increasing functions, golden-section
// maximization and the grid-scan "smallest maximizer" used by the solvers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace relcon {

inline constexpr int kDefaultBisectIterations = 200;

/// Point `i` of an `n`-point equally spaced grid on [lo, hi]. The endpoints
/// are returned exactly.
inline double grid_point(double lo, double hi, std::size_t i, std::size_t n) {
  if (n < 2 || i == 0) return lo;
  if (i + 1 == n) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

/// Boundary of a monotone predicate: requires ok(good) && !ok(bad), where
/// `good` and `bad` may be ordered either way. Returns the last point known to
/// satisfy the predicate once the bracket collapses to adjacent doubles.
template <typename Pred>
double bisect_boundary(Pred&& ok, double good, double bad,
                       int max_iter = kDefaultBisectIterations) {
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (good + bad);
    if (mid == good || mid == bad) break;
    if (ok(mid))
      good = mid;
    else
      bad = mid;
  }
  return good;
}

/// Solves f(x) = y for increasing f on [lo, hi], assuming f(lo) <= y <= f(hi).
template <typename F>
double invert_increasing(F&& f, double y, double lo, double hi,
                         int max_iter = kDefaultBisectIterations) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == y) return lo;
  if (fhi == y) return hi;
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = f(mid);
    if (fm == y) return mid;
    if (fm < y) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return (std::abs(flo - y) <= std::abs(fhi - y)) ? lo : hi;
}

struct Extremum {
  double arg;
  double value;
};

/// Golden-section search for the maximum of a unimodal f on [a, b].
template <typename F>
Extremum golden_section_max(F&& f, double a, double b, int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > 4 * std::numeric_limits<double>::epsilon(); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? Extremum{c, fc} : Extremum{d, fd};
}

namespace detail {

// Values closer than this are indistinguishable rounding noise.
inline double noise_floor(double v) {
  return 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(v));
}

// Golden refinement around grid index k; keeps the grid point unless the
// refinement is better by more than rounding noise.
template <typename F>
Extremum refine_peak(F& f, const std::vector<double>& xs,
                     const std::vector<double>& vs, std::size_t k) {
  Extremum best{xs[k], vs[k]};
  const double a = xs[k == 0 ? 0 : k - 1];
  const double b = xs[std::min(k + 1, xs.size() - 1)];
  if (b > a) {
    const Extremum r = golden_section_max(f, a, b);
    if (r.value > best.value + noise_floor(best.value)) best = r;
  }
  return best;
}

}  // namespace detail

/// Smallest maximizer of f over [lo, 1].
///
/// Scans the canonical grid {i/(n-1)} restricted to [lo, 1] (with lo itself
/// prepended), so that searches started from different lower bounds see the
/// same grid cells. The global maximum is refined by golden section around
/// the best cell. The maximizer is then taken from the leftmost run of grid
/// points whose values lie within eps_val of the maximum: a run of three or
/// more points is a plateau and its left edge is located by bisection; a
/// shorter run is a peak and is refined locally.
template <typename F>
Extremum smallest_maximizer_on(F&& f, double lo, std::size_t n, double eps_val) {
  std::vector<double> xs;
  xs.reserve(n + 1);
  xs.push_back(lo);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid_point(0.0, 1.0, i, n);
    if (x > lo) xs.push_back(x);
  }
  std::vector<double> vs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) vs[i] = f(xs[i]);

  const auto kmax = static_cast<std::size_t>(
      std::max_element(vs.begin(), vs.end()) - vs.begin());
  const Extremum global = detail::refine_peak(f, xs, vs, kmax);
  const double band = global.value - eps_val;

  // The best grid point always belongs to the band, even when refinement
  // lifted the maximum more than eps_val above it.
  auto in_band = [&](std::size_t i) { return i == kmax || vs[i] >= band; };
  std::size_t a = 0;
  while (!in_band(a)) ++a;
  std::size_t b = a;
  while (b + 1 < xs.size() && in_band(b + 1)) ++b;

  double arg;
  if (b - a >= 2) {
    arg = xs[a];
    if (a > 0)
      arg = bisect_boundary([&](double s) { return f(s) >= band; }, xs[a], xs[a - 1]);
  } else if (a <= kmax && kmax <= b) {
    arg = global.arg;
  } else {
    const std::size_t j = (b > a && vs[b] > vs[a]) ? b : a;
    arg = detail::refine_peak(f, xs, vs, j).arg;
  }
  return {arg, global.value};
}

}  // namespace relcon

#endif  // RELCON_NUMERIC_HPP
