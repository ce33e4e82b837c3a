#ifndef RELCON_CLI_IO_HPP
#define RELCON_CLI_IO_HPP

// Run configuration (JSON), command dispatch and table output. This is the
// only header that depends on nlohmann::json.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "relcon/baseline.hpp"
#include "relcon/errors.hpp"
#include "relcon/oracle.hpp"
#include "relcon/payoff_env.hpp"
#include "relcon/retirement.hpp"
#include "relcon/solver_config.hpp"
#include "relcon/verifier.hpp"

namespace relcon {

using json = nlohmann::json;

/// A stage-payoff function in a config: polynomial coefficients (ascending
/// powers) or lookup-table breakpoints [[x, y], ...].
struct FnSpec {
  bool is_table = false;
  std::vector<double> coeffs;
  std::vector<std::pair<double, double>> points;

  MonotoneFn build(Direction dir) const {
    return is_table ? MonotoneFn::table(points, dir) : MonotoneFn::polynomial(coeffs, dir);
  }
};

struct EnvSpec {
  std::string family;  // polynomial | table | apprenticeship | cournot | bertrand
  FnSpec pi, w, v;     // polynomial and table families
  std::map<std::string, double> params;  // microfounded families
  double delta = 0.0;
  double s0 = 0.0;
};

struct ContractSpec {
  std::vector<double> s;
  std::vector<double> p;
  std::optional<double> s_limit;
  std::string file;  // CSV with header t,s_t,p_t; replaces s and p
};

struct VerifySpec {
  double tol = 1e-8;
  std::optional<std::size_t> horizon;
};

struct OutputSpec {
  std::string prefix = "relcon";
  std::string format = "csv";
};

struct RunSpec {
  std::string command;
  EnvSpec env;
  std::optional<int> K;
  std::optional<FnSpec> C;
  std::vector<double> deltas;
  std::vector<double> lambdas;
  std::size_t n_points = 101;
  std::optional<ContractSpec> contract;
  VerifySpec verify;
  GridSpec grid;
  SolverConfig solver;
  OutputSpec output;
};

namespace detail {

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"solve",      "retire", "pareto", "sweep-delta",
                                          "sweep-cost", "verify", "oracle"};
  return c;
}

inline std::string join_key(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline const char* type_name(const json& j) {
  if (j.is_number_integer()) return "integer";
  return j.type_name();
}

// Schema-checked view of a JSON object. Every key read is recorded so that
// finish() can reject the rest.
class ObjReader {
 public:
  ObjReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object())
      throw SchemaError(path_.empty() ? "<root>" : path_,
                        "'" + (path_.empty() ? std::string("<root>") : path_) +
                            "' must be an object, got " + type_name(j));
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  std::string key(const std::string& k) const { return join_key(path_, k); }

  const json& get(const std::string& k, const char* expected) {
    if (!j_.contains(k))
      throw SchemaError(key(k), "missing required key '" + key(k) + "' (" + expected + ")");
    used_.insert(k);
    return j_.at(k);
  }

  double number(const std::string& k) {
    const json& v = get(k, "number");
    if (!v.is_number()) throw type_error(k, "number", v);
    return v.get<double>();
  }
  double number(const std::string& k, double dflt) { return has(k) ? number(k) : dflt; }

  long long integer(const std::string& k) {
    const json& v = get(k, "integer");
    if (!v.is_number_integer()) throw type_error(k, "integer", v);
    return v.get<long long>();
  }

  std::size_t count(const std::string& k, std::size_t min_value) {
    const long long v = integer(k);
    if (v < static_cast<long long>(min_value))
      throw SchemaError(key(k), "'" + key(k) + "' must be an integer >= " +
                                    std::to_string(min_value));
    return static_cast<std::size_t>(v);
  }
  std::size_t count(const std::string& k, std::size_t min_value, std::size_t dflt) {
    return has(k) ? count(k, min_value) : dflt;
  }

  std::string string(const std::string& k) {
    const json& v = get(k, "string");
    if (!v.is_string()) throw type_error(k, "string", v);
    return v.get<std::string>();
  }
  std::string string(const std::string& k, const std::string& dflt) {
    return has(k) ? string(k) : dflt;
  }

  std::vector<double> numbers(const std::string& k) {
    const json& v = get(k, "array of numbers");
    if (!v.is_array()) throw type_error(k, "array of numbers", v);
    std::vector<double> out;
    for (const json& x : v) {
      if (!x.is_number()) throw type_error(k, "array of numbers", x);
      out.push_back(x.get<double>());
    }
    return out;
  }

  SchemaError type_error(const std::string& k, const char* expected, const json& got) const {
    return SchemaError(key(k), "'" + key(k) + "' must be " + expected + ", got " + type_name(got));
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key()))
        throw SchemaError(key(it.key()), "unknown key '" + key(it.key()) + "'");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

// Numbers -> polynomial; [x, y] pairs -> table.
inline FnSpec read_fn(const json& v, const std::string& key, bool allow_poly, bool allow_table) {
  const char* expected = allow_poly && allow_table ? "coefficient array or [[x, y], ...] table"
                         : allow_poly              ? "array of coefficients"
                                                   : "[[x, y], ...] table";
  auto fail = [&] {
    return SchemaError(key, "'" + key + "' must be " + expected);
  };
  if (!v.is_array() || v.empty()) throw fail();
  FnSpec f;
  f.is_table = v.front().is_array();
  if (f.is_table ? !allow_table : !allow_poly) throw fail();
  for (const json& x : v) {
    if (f.is_table) {
      if (!x.is_array() || x.size() != 2 || !x[0].is_number() || !x[1].is_number()) throw fail();
      f.points.emplace_back(x[0].get<double>(), x[1].get<double>());
    } else {
      if (!x.is_number()) throw fail();
      f.coeffs.push_back(x.get<double>());
    }
  }
  return f;
}

inline json fn_to_json(const FnSpec& f) {
  json out = json::array();
  if (f.is_table)
    for (const auto& [x, y] : f.points) out.push_back(json::array({x, y}));
  else
    for (double c : f.coeffs) out.push_back(c);
  return out;
}

inline EnvSpec read_env(const json& j) {
  ObjReader r(j, "env");
  EnvSpec e;
  e.family = r.string("family");
  e.delta = r.number("delta");
  if (e.family == "polynomial" || e.family == "table") {
    const bool table = e.family == "table";
    e.pi = read_fn(r.get("pi", "function"), "env.pi", !table, table);
    e.w = read_fn(r.get("w", "function"), "env.w", !table, table);
    e.v = read_fn(r.get("v", "function"), "env.v", !table, table);
    e.s0 = r.number("s0", 0.0);
  } else {
    std::vector<std::string> names;
    if (e.family == "apprenticeship")
      names = {"p", "q"};
    else if (e.family == "cournot")
      names = {"A", "beta"};
    else if (e.family == "bertrand")
      names = {"A", "gamma"};
    else
      throw SchemaError("env.family", "unknown environment family '" + e.family +
                                          "' (expected polynomial, table, apprenticeship, "
                                          "cournot or bertrand)");
    for (const auto& n : names) e.params[n] = r.number(n);
  }
  r.finish();
  return e;
}

inline json env_to_json(const EnvSpec& e) {
  json out{{"family", e.family}, {"delta", e.delta}};
  if (e.family == "polynomial" || e.family == "table") {
    out["pi"] = fn_to_json(e.pi);
    out["w"] = fn_to_json(e.w);
    out["v"] = fn_to_json(e.v);
    out["s0"] = e.s0;
  } else {
    for (const auto& [k, v] : e.params) out[k] = v;
  }
  return out;
}

inline SolverConfig read_solver(const json& j) {
  ObjReader r(j, "solver");
  SolverConfig c;
  c.scan_points = r.count("scan_points", 3, c.scan_points);
  c.shoot_points = r.count("shoot_points", 3, c.shoot_points);
  c.max_periods = r.count("max_periods", 1, c.max_periods);
  c.cap = r.count("cap", 1, c.cap);
  c.validation_grid = r.count("validation_grid", 2, c.validation_grid);
  for (auto [name, slot] : {std::pair{"eps_step", &c.eps_step}, std::pair{"eps_root", &c.eps_root},
                            std::pair{"eps_val", &c.eps_val}, std::pair{"eps_mono", &c.eps_mono}}) {
    *slot = r.number(name, *slot);
    if (!(*slot >= 0.0)) throw SchemaError(r.key(name), "'" + r.key(name) + "' must be >= 0");
  }
  r.finish();
  return c;
}

inline json solver_to_json(const SolverConfig& c) {
  return {{"scan_points", c.scan_points}, {"shoot_points", c.shoot_points},
          {"eps_step", c.eps_step},       {"eps_root", c.eps_root},
          {"eps_val", c.eps_val},         {"eps_mono", c.eps_mono},
          {"max_periods", c.max_periods}, {"cap", c.cap},
          {"validation_grid", c.validation_grid}};
}

inline ContractSpec read_contract(const json& j) {
  ObjReader r(j, "contract");
  ContractSpec c;
  if (r.has("file")) {
    if (r.has("s") || r.has("p"))
      throw SchemaError("contract.file", "'contract.file' excludes inline 's' and 'p'");
    c.file = r.string("file");
  } else {
    c.s = r.numbers("s");
    c.p = r.numbers("p");
    if (c.s.empty()) throw SchemaError("contract.s", "'contract.s' must not be empty");
    if (c.p.size() > c.s.size())
      throw SchemaError("contract.p", "'contract.p' is longer than 'contract.s'");
  }
  if (r.has("s_limit")) c.s_limit = r.number("s_limit");
  r.finish();
  return c;
}

inline json contract_to_json(const ContractSpec& c) {
  json out = json::object();
  if (!c.file.empty()) {
    out["file"] = c.file;
  } else {
    out["s"] = c.s;
    out["p"] = c.p;
  }
  if (c.s_limit) out["s_limit"] = *c.s_limit;
  return out;
}

inline std::vector<double> nonempty_values(ObjReader& r, const std::string& key) {
  std::vector<double> v = r.numbers(key);
  if (v.empty()) throw SchemaError(key, "'" + key + "' must not be empty");
  return v;
}

}  // namespace detail

/// Parses and validates a run specification. Defaults are filled in; keys
/// that are unknown or unused by the command raise SchemaError naming the key.
inline RunSpec parse_config_doc(const json& doc) {
  detail::ObjReader r(doc, "");
  RunSpec s;
  s.command = r.string("command");
  const auto& cmds = detail::commands();
  if (std::find(cmds.begin(), cmds.end(), s.command) == cmds.end())
    throw SchemaError("command", "unknown command '" + s.command + "'");
  s.env = detail::read_env(r.get("env", "object"));
  if (r.has("solver")) s.solver = detail::read_solver(r.get("solver", "object"));
  if (r.has("output")) {
    detail::ObjReader o(r.get("output", "object"), "output");
    s.output.prefix = o.string("prefix", s.output.prefix);
    s.output.format = o.string("format", s.output.format);
    if (s.output.format != "csv")
      throw SchemaError("output.format", "'output.format' must be \"csv\"");
    o.finish();
  }

  const std::string& c = s.command;
  const bool needs_cost = c == "retire" || c == "sweep-cost";
  const bool allows_cost = needs_cost || c == "verify" || c == "oracle";
  if (needs_cost || (allows_cost && (r.has("K") || r.has("C")))) {
    const long long K = r.integer("K");
    if (K < 2) throw SchemaError("K", "'K' must be an integer >= 2");
    s.K = static_cast<int>(K);
    s.C = detail::read_fn(r.get("C", "function"), "C", true, true);
  }
  if (c == "pareto") s.n_points = r.count("n_points", 1, s.n_points);
  if (c == "sweep-delta") s.deltas = detail::nonempty_values(r, "deltas");
  if (c == "sweep-cost") s.lambdas = detail::nonempty_values(r, "lambdas");
  if (c == "verify") {
    s.contract = detail::read_contract(r.get("contract", "object"));
    if (r.has("verify")) {
      detail::ObjReader v(r.get("verify", "object"), "verify");
      s.verify.tol = v.number("tol", s.verify.tol);
      if (!(s.verify.tol >= 0.0)) throw SchemaError("verify.tol", "'verify.tol' must be >= 0");
      if (v.has("horizon")) s.verify.horizon = v.count("horizon", 0);
      v.finish();
    }
  }
  if (c == "oracle" && r.has("grid")) {
    detail::ObjReader g(r.get("grid", "object"), "grid");
    s.grid.m = g.count("m", 2, s.grid.m);
    s.grid.T = g.count("T", 1, s.grid.T);
    g.finish();
  }
  r.finish();
  return s;
}

inline RunSpec parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return parse_config_doc(doc);
}

/// Canonical JSON form: every default spelled out, keys sorted.
inline json to_json(const RunSpec& s) {
  json out{{"command", s.command},
           {"env", detail::env_to_json(s.env)},
           {"solver", detail::solver_to_json(s.solver)},
           {"output", {{"prefix", s.output.prefix}, {"format", s.output.format}}}};
  if (s.K) out["K"] = *s.K;
  if (s.C) out["C"] = detail::fn_to_json(*s.C);
  if (s.command == "pareto") out["n_points"] = s.n_points;
  if (s.command == "sweep-delta") out["deltas"] = s.deltas;
  if (s.command == "sweep-cost") out["lambdas"] = s.lambdas;
  if (s.command == "verify") {
    out["contract"] = detail::contract_to_json(*s.contract);
    json v{{"tol", s.verify.tol}};
    if (s.verify.horizon) v["horizon"] = *s.verify.horizon;
    out["verify"] = v;
  }
  if (s.command == "oracle") out["grid"] = {{"m", s.grid.m}, {"T", s.grid.T}};
  return out;
}

inline std::string serialize(const RunSpec& s) { return to_json(s).dump(2) + "\n"; }

/// Fixed 12-significant-digit decimal rendering used in every table.
inline std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// x rounded to 12 significant digits, for JSON summaries.
inline double round12(double x) { return std::stod(fmt12(x)); }

struct PlotData {
  std::vector<std::pair<double, double>> s_series;  // (t, s_t)
  std::vector<std::pair<double, double>> p_series;  // (t, p_t)
  std::optional<double> limit_line;                 // M* for infinite contracts
  std::optional<std::pair<double, double>> terminal;  // (K, 1) for retirement contracts
};

inline PlotData emit_plot_data(const OptimalContract& c) {
  PlotData d;
  for (std::size_t t = 0; t < c.path.s.size(); ++t) {
    d.s_series.emplace_back(static_cast<double>(t), c.path.s[t]);
    d.p_series.emplace_back(static_cast<double>(t), t < c.path.p.size() ? c.path.p[t] : 0.0);
  }
  d.limit_line = c.M_star;
  return d;
}

inline PlotData emit_plot_data(const RetirementContract& c) {
  PlotData d;
  for (std::size_t t = 0; t < c.s.size(); ++t) d.s_series.emplace_back(static_cast<double>(t), c.s[t]);
  for (std::size_t t = 0; t < c.p.size(); ++t) d.p_series.emplace_back(static_cast<double>(t), c.p[t]);
  d.terminal = std::pair{static_cast<double>(c.s.size() - 1), c.s.back()};
  return d;
}

/// series,x,y rows: the s and p staircases, then the limit line or the
/// terminal marker.
inline std::string plot_csv(const PlotData& d) {
  std::string out = "series,x,y\n";
  for (const auto& [x, y] : d.s_series) out += "s," + fmt12(x) + "," + fmt12(y) + "\n";
  for (const auto& [x, y] : d.p_series) out += "p," + fmt12(x) + "," + fmt12(y) + "\n";
  if (d.limit_line && !d.s_series.empty()) {
    out += "limit," + fmt12(d.s_series.front().first) + "," + fmt12(*d.limit_line) + "\n";
    out += "limit," + fmt12(d.s_series.back().first) + "," + fmt12(*d.limit_line) + "\n";
  }
  if (d.terminal) out += "terminal," + fmt12(d.terminal->first) + "," + fmt12(d.terminal->second) + "\n";
  return out;
}

inline PayoffEnv build_env(const EnvSpec& e, const SolverConfig& cfg, std::optional<double> delta = {}) {
  const double d = delta.value_or(e.delta);
  PayoffEnv::check_delta(d);
  const auto& p = e.params;
  if (e.family == "apprenticeship") return make_apprenticeship_env(p.at("p"), p.at("q"), d);
  if (e.family == "cournot") return make_cournot_env(p.at("A"), p.at("beta"), d);
  if (e.family == "bertrand") return make_bertrand_env(p.at("A"), p.at("gamma"), d);
  return PayoffEnv::make(e.pi.build(Direction::increasing), e.w.build(Direction::decreasing),
                         e.v.build(Direction::increasing), d, e.s0, cfg.validation_grid,
                         cfg.eps_mono);
}

inline RetirementEnv build_retirement_env(const RunSpec& s) {
  return RetirementEnv::make(build_env(s.env, s.solver), *s.K, s.C->build(Direction::decreasing),
                             s.solver.validation_grid, s.solver.eps_mono);
}

/// Reads a t,s_t,p_t table (as written by the solve and retire commands).
inline std::pair<std::vector<double>, std::vector<double>> read_sequence_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open contract file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "t,s_t,p_t")
    throw ParseError("contract file '" + path + "' must start with the header t,s_t,p_t");
  std::vector<double> s, p;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c, extra;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ',') ||
        std::getline(ss, extra, ','))
      throw ParseError("contract file '" + path + "': row " + std::to_string(row + 1) +
                       " must have three fields");
    try {
      std::size_t used = 0;
      if (std::stoull(a, &used) != row || used != a.size()) throw std::invalid_argument("t");
      s.push_back(std::stod(b));
      p.push_back(std::stod(c));
    } catch (const std::exception&) {
      throw ParseError("contract file '" + path + "': malformed row " + std::to_string(row + 1));
    }
    ++row;
  }
  if (s.empty()) throw ParseError("contract file '" + path + "' has no rows");
  return {s, p};
}

namespace detail {

inline std::string sequence_csv(const std::vector<double>& s, const std::vector<double>& p) {
  std::string out = "t,s_t,p_t\n";
  for (std::size_t t = 0; t < s.size(); ++t)
    out += std::to_string(t) + "," + fmt12(s[t]) + "," + fmt12(t < p.size() ? p[t] : 0.0) + "\n";
  return out;
}

inline void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    out << content;
    if (!out.flush()) throw std::runtime_error("cannot write '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

inline json error_record(const Error& e) {
  json rec{{"error", e.name()}, {"message", e.what()}, {"exit_code", exit_code(e.kind())}};
  if (const auto* se = dynamic_cast<const SchemaError*>(&e)) rec["key"] = se->key();
  return rec;
}

struct RunOutput {
  std::vector<std::pair<std::string, std::string>> files;  // suffix, content
  json results = json::object();
  int exit_code = 0;
  std::optional<json> diagnostic;  // violation or warning record for stderr
};

inline json verdict_record(const ICReport& r) {
  json rec{{"verdict", to_string(r.verdict)}, {"min_slack", round12(r.min_slack)}};
  if (r.verdict != Verdict::implementable) {
    rec["constraint"] = r.constraint;
    rec["t"] = r.t;
  }
  return rec;
}

inline std::string verify_csv(const ICReport& r, bool retirement) {
  std::string out = "t,constraint,slack_lo,slack_hi\n";
  auto row = [&](std::size_t t, const char* name, const std::optional<Interval>& iv) {
    if (iv) out += std::to_string(t) + "," + name + "," + fmt12(iv->lo) + "," + fmt12(iv->hi) + "\n";
  };
  for (const auto& ps : r.per_period) {
    row(ps.t, retirement ? "R-P-IC" : "P-IC", ps.pic);
    row(ps.t, retirement ? "R-E-IC" : "E-IC", ps.eic);
    row(ps.t, "S-IC", ps.sic);
  }
  return out;
}

inline RunOutput run_solve(const RunSpec& s) {
  RunOutput o;
  const PayoffEnv env = build_env(s.env, s.solver);
  const OptimalContract c = solve_optimal(env, s.solver);
  o.files.emplace_back("sequence.csv", sequence_csv(c.path.s, c.path.p));
  o.files.emplace_back("plot.csv", plot_csv(emit_plot_data(c)));
  o.results = {{"sbar_star", round12(c.sbar_star)}, {"s1_star", round12(c.s1_star)},
               {"M_star", round12(c.M_star)},       {"Pi0", round12(c.Pi0)},
               {"W0", round12(c.W0)},               {"s_limit", round12(c.path.s_limit)},
               {"horizon", c.path.horizon()},       {"truncated", c.path.truncated},
               {"trivial", c.trivial}};
  return o;
}

inline RunOutput run_retire(const RunSpec& s) {
  RunOutput o;
  const RetirementEnv env = build_retirement_env(s);
  const RetirementContract c = solve_retirement(env, s.solver);
  o.files.emplace_back("sequence.csv", sequence_csv(c.s, c.p));
  o.files.emplace_back("plot.csv", plot_csv(emit_plot_data(c)));
  json roots = json::array();
  for (double r : c.s1_roots) roots.push_back(round12(r));
  o.results = {{"K", env.K()}, {"s1_star", round12(c.s[1])}, {"Pi0R", round12(c.Pi0R)},
               {"s1_roots", roots}};
  return o;
}

inline RunOutput run_pareto(const RunSpec& s) {
  RunOutput o;
  const PayoffEnv env = build_env(s.env, s.solver);
  const OptimalContract c = solve_optimal(env, s.solver);
  const auto pts = pareto_frontier(env, c, s.n_points);
  std::string csv = "p0,Pi0,W0\n";
  for (const auto& f : pts) csv += fmt12(f.p0) + "," + fmt12(f.Pi0) + "," + fmt12(f.W0) + "\n";
  o.files.emplace_back("frontier.csv", csv);
  o.results = {{"s1_star", round12(c.s1_star)},
               {"Pi0", round12(c.Pi0)},
               {"W0", round12(c.W0)},
               {"p0_max", round12(pts.back().p0)},
               {"surplus", round12(c.Pi0 + c.W0)}};
  return o;
}

inline RunOutput run_sweep_delta(const RunSpec& s) {
  RunOutput o;
  std::string csv = "param,s1_star,sbar_star,Pi0\n";
  for (double d : s.deltas) {
    const OptimalContract c = solve_optimal(build_env(s.env, s.solver, d), s.solver);
    csv += fmt12(d) + "," + fmt12(c.s1_star) + "," + fmt12(c.sbar_star) + "," + fmt12(c.Pi0) + "\n";
  }
  o.files.emplace_back("sweep.csv", csv);
  const DeltaThresholds th = delta_thresholds(
      [&](double d) { return build_env(s.env, s.solver, d); }, 1e-9, s.solver);
  o.results = {{"delta_low", round12(th.delta_low)}, {"delta_high", round12(th.delta_high)}};
  return o;
}

inline RunOutput run_sweep_cost(const RunSpec& s) {
  RunOutput o;
  const auto rows = cost_scaling_sweep(build_retirement_env(s), s.lambdas, s.solver);
  std::string csv = "param,s1_star,sbar_star,Pi0\n";
  for (const auto& r : rows)
    csv += fmt12(r.lambda) + "," + fmt12(r.s1_star) + ",1," + fmt12(r.Pi0R) + "\n";
  o.files.emplace_back("sweep.csv", csv);
  o.results = {{"K", *s.K}, {"rows", rows.size()}};
  return o;
}

inline RunOutput run_verify(const RunSpec& s) {
  RunOutput o;
  ContractSpec cs = *s.contract;
  if (!cs.file.empty()) std::tie(cs.s, cs.p) = read_sequence_csv(cs.file);
  ICReport r;
  if (s.K) {
    RetirementContract rc;
    rc.s = cs.s;
    rc.p = cs.p;
    r = check_retirement_contract(build_retirement_env(s), rc, s.verify.tol);
  } else {
    const PayoffEnv env = build_env(s.env, s.solver);
    ContractPath path{cs.s, cs.p, cs.s_limit.value_or(cs.s.back()), false};
    VerifyOptions opt;
    opt.tol = s.verify.tol;
    opt.horizon = s.verify.horizon;
    r = check_contract(env, path, opt);
    if (r.feasibility_ok) {
      // Summed-constraint slacks ride along in the table.
      const ICReport sic = check_sic(env, path, opt);
      for (const auto& row : sic.per_period)
        if (row.t < r.per_period.size()) r.per_period[row.t].sic = row.sic;
    }
  }
  o.files.emplace_back("verify.csv", verify_csv(r, s.K.has_value()));
  o.results = verdict_record(r);
  o.results["periods"] = r.per_period.size();
  if (r.verdict == Verdict::violated) {
    o.exit_code = exit_code(ErrorKind::infeasible);
    o.diagnostic = json{{"error", "ContractViolated"},
                        {"constraint", r.constraint},
                        {"t", r.t},
                        {"exit_code", o.exit_code}};
  } else if (r.verdict == Verdict::indeterminate) {
    o.diagnostic =
        json{{"warning", "indeterminate"}, {"constraint", r.constraint}, {"t", r.t}};
  }
  return o;
}

inline RunOutput run_oracle(const RunSpec& s) {
  RunOutput o;
  if (s.K) {
    const RetirementEnv env = build_retirement_env(s);
    const RetirementOracleResult r = oracle_retirement(env, s.grid.m, s.solver.cap);
    o.files.emplace_back("oracle.csv", sequence_csv(r.best_sequence, r.best_payments));
    o.results = {{"best_profit", round12(r.best_profit)},
                 {"enumerated", r.enumerated},
                 {"passing", r.passing}};
    try {
      o.results["solver_Pi0R"] = round12(solve_retirement(env, s.solver).Pi0R);
    } catch (const NoContract&) {
      o.results["solver_Pi0R"] = nullptr;
    }
    return o;
  }
  const PayoffEnv env = build_env(s.env, s.solver);
  const Envelope e = enumerate_envelope(env, s.grid, s.solver.cap);
  const OptimalContract c = solve_optimal(env, s.solver);
  std::string csv = "t,envelope,solver_s_t\n";
  bool dominated = true;
  for (std::size_t t = 1; t <= s.grid.T; ++t) {
    const double st = t < c.path.s.size() ? c.path.s[t] : c.path.s_limit;
    dominated = dominated && e.max_level[t - 1] <= st + s.grid.step();
    csv += std::to_string(t) + "," + fmt12(e.max_level[t - 1]) + "," + fmt12(st) + "\n";
  }
  o.files.emplace_back("oracle.csv", csv);
  o.results = {{"enumerated", e.enumerated}, {"passing", e.passing}, {"dominated", dominated}};
  return o;
}

}  // namespace detail

/// Executes a validated spec: writes <prefix>.<table>.csv files and
/// <prefix>.summary.json, prints the summary to `out` and any error or
/// warning record to `err`. Returns the process exit code.
inline int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    detail::RunOutput o;
    const std::string& c = spec.command;
    if (c == "solve") o = detail::run_solve(spec);
    else if (c == "retire") o = detail::run_retire(spec);
    else if (c == "pareto") o = detail::run_pareto(spec);
    else if (c == "sweep-delta") o = detail::run_sweep_delta(spec);
    else if (c == "sweep-cost") o = detail::run_sweep_cost(spec);
    else if (c == "verify") o = detail::run_verify(spec);
    else o = detail::run_oracle(spec);

    const json summary{{"command", c}, {"config", to_json(spec)}, {"results", o.results}};
    const std::string text = summary.dump(2) + "\n";
    for (const auto& [suffix, content] : o.files)
      detail::write_atomic(spec.output.prefix + "." + suffix, content);
    detail::write_atomic(spec.output.prefix + ".summary.json", text);
    out << text;
    if (o.diagnostic) err << o.diagnostic->dump() << "\n";
    return o.exit_code;
  } catch (const Error& e) {
    err << detail::error_record(e).dump() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << json{{"error", "IOError"}, {"message", e.what()}, {"exit_code", 1}}.dump() << "\n";
    return 1;
  }
}

}  // namespace relcon

#endif  // RELCON_CLI_IO_HPP
