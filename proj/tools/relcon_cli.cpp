// relcon <command> --config <file> --out <prefix> [--scan-points N] [--max-periods N] [--tol X]

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "relcon/cli_io.hpp"

namespace {

int fail(const relcon::Error& e) {
  std::cerr << relcon::detail::error_record(e).dump() << "\n";
  return relcon::exit_code(e.kind());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal relational-contract solver and verifier"};
  std::string command, config_path, out_prefix;
  std::optional<std::size_t> scan_points, max_periods;
  std::optional<double> tol;
  app.add_option("command", command, "solve | retire | pareto | sweep-delta | sweep-cost | verify | oracle")
      ->required();
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_prefix, "output path prefix");
  app.add_option("--scan-points", scan_points, "override solver.scan_points");
  app.add_option("--max-periods", max_periods, "override solver.max_periods");
  app.add_option("--tol", tol, "override verify.tol");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  relcon::RunSpec spec;
  try {
    std::ifstream in(config_path);
    if (!in) throw relcon::ParseError("cannot open config file '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    relcon::json doc;
    try {
      doc = relcon::json::parse(buf.str());
    } catch (const relcon::json::parse_error& e) {
      throw relcon::ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (doc.is_object() && !doc.contains("command")) doc["command"] = command;
    if (doc.is_object() && doc["command"] != command)
      throw relcon::SchemaError("command", "config command " + doc["command"].dump() +
                                               " does not match '" + command + "'");
    spec = relcon::parse_config_doc(doc);
    if (scan_points) {
      if (*scan_points < 3) throw relcon::SchemaError("solver.scan_points", "--scan-points must be >= 3");
      spec.solver.scan_points = *scan_points;
    }
    if (max_periods) {
      if (*max_periods < 1) throw relcon::SchemaError("solver.max_periods", "--max-periods must be >= 1");
      spec.solver.max_periods = *max_periods;
    }
    if (tol) {
      if (!(*tol >= 0.0)) throw relcon::SchemaError("verify.tol", "--tol must be >= 0");
      spec.verify.tol = *tol;
    }
    if (!out_prefix.empty()) spec.output.prefix = out_prefix;
  } catch (const relcon::Error& e) {
    return fail(e);
  }
  return relcon::run(spec, std::cout, std::cerr);
}
