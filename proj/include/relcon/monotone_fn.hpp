#ifndef RELCON_MONOTONE_FN_HPP
#define RELCON_MONOTONE_FN_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "relcon/errors.hpp"

namespace relcon {

enum class Direction { increasing, decreasing };

inline const char* to_string(Direction d) {
  return d == Direction::increasing ? "increasing" : "decreasing";
}

/// c[0] + c[1] s + c[2] s^2 + ...
struct Polynomial {
  std::vector<double> coeffs;
};

struct Affine {
  double intercept = 0.0;
  double slope = 0.0;
};

/// Piecewise-linear interpolation through (x, y) breakpoints with x running
/// strictly from 0 to 1.
struct LookupTable {
  std::vector<std::pair<double, double>> points;
};

/// Closed-form payoff of a microfounded model; `params` records the inputs
/// for reporting.
struct Composite {
  std::string name;
  std::map<std::string, double> params;
  std::function<double(double)> eval;
};

/// A stage-payoff function on [0, 1] with a declared monotone direction.
/// Immutable; evaluation is deterministic and thread-safe.
class MonotoneFn {
 public:
  using Form = std::variant<Polynomial, Affine, LookupTable, Composite>;

  MonotoneFn(Form form, Direction dir, double scale = 1.0)
      : form_(std::move(form)), dir_(dir), scale_(scale) {
    check_form();
  }

  static MonotoneFn polynomial(std::vector<double> coeffs, Direction dir) {
    return MonotoneFn(Polynomial{std::move(coeffs)}, dir);
  }
  static MonotoneFn affine(double intercept, double slope, Direction dir) {
    return MonotoneFn(Affine{intercept, slope}, dir);
  }
  static MonotoneFn table(std::vector<std::pair<double, double>> points, Direction dir) {
    return MonotoneFn(LookupTable{std::move(points)}, dir);
  }
  static MonotoneFn composite(std::string name, std::map<std::string, double> params,
                              std::function<double(double)> eval, Direction dir) {
    return MonotoneFn(Composite{std::move(name), std::move(params), std::move(eval)}, dir);
  }

  double operator()(double s) const { return scale_ * std::visit(Evaluator{s}, form_); }

  Direction direction() const { return dir_; }
  double scale() const { return scale_; }
  const Form& form() const { return form_; }

  std::string family() const {
    return std::visit(
        [](const auto& f) -> std::string {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Polynomial>) return "polynomial";
          if constexpr (std::is_same_v<T, Affine>) return "affine";
          if constexpr (std::is_same_v<T, LookupTable>) return "table";
          if constexpr (std::is_same_v<T, Composite>) return f.name;
        },
        form_);
  }

  /// lambda * f. A positive factor keeps the direction.
  MonotoneFn scaled(double lambda) const {
    if (!(lambda > 0.0)) throw BadParams("scale factor must be positive");
    return MonotoneFn(form_, dir_, scale_ * lambda);
  }

 private:
  struct Evaluator {
    double s;
    double operator()(const Polynomial& p) const {
      double acc = 0.0;
      for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * s + *it;
      return acc;
    }
    double operator()(const Affine& a) const { return a.intercept + a.slope * s; }
    double operator()(const LookupTable& t) const {
      const auto& pts = t.points;
      const double x = std::clamp(s, 0.0, 1.0);
      auto hi = std::upper_bound(pts.begin(), pts.end(), x,
                                 [](double v, const auto& pt) { return v < pt.first; });
      if (hi == pts.begin()) return pts.front().second;
      if (hi == pts.end()) return pts.back().second;
      auto lo = std::prev(hi);
      const double u = (x - lo->first) / (hi->first - lo->first);
      return lo->second + u * (hi->second - lo->second);
    }
    double operator()(const Composite& c) const { return c.eval(s); }
  };

  void check_form() const {
    if (const auto* p = std::get_if<Polynomial>(&form_); p && p->coeffs.empty())
      throw BadParams("polynomial needs at least one coefficient");
    if (const auto* c = std::get_if<Composite>(&form_); c && !c->eval)
      throw BadParams("composite function has no evaluator");
    if (const auto* t = std::get_if<LookupTable>(&form_)) {
      const auto& pts = t->points;
      if (pts.size() < 2) throw BadParams("lookup table needs at least two breakpoints");
      if (pts.front().first != 0.0 || pts.back().first != 1.0)
        throw BadParams("lookup table breakpoints must span [0, 1]");
      for (std::size_t i = 1; i < pts.size(); ++i) {
        if (!(pts[i].first > pts[i - 1].first))
          throw BadParams("lookup table abscissae must be strictly increasing");
        const double dy = pts[i].second - pts[i - 1].second;
        const bool ok = dir_ == Direction::increasing ? dy > 0.0 : dy < 0.0;
        if (!ok)
          throw BadParams(std::string("lookup table values must be strictly ") + to_string(dir_));
      }
    }
  }

  Form form_;
  Direction dir_;
  double scale_;
};

}  // namespace relcon

#endif  // RELCON_MONOTONE_FN_HPP
