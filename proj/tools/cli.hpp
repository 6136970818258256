////////////////////////////////////////////////////////////////////////////////
//                                                                            //
//  This file is part of factorapprox                                         //
//                                                                            //
//  Copyright 2026 factorapprox developers                                    //
//                                                                            //
//  Licensed under the Apache License, Version 2.0 (the "License");           //
//  you may not use this file except in compliance with the License.          //
//  You may obtain a copy of the License at                                   //
//                                                                            //
//      http://www.apache.org/licenses/LICENSE-2.0                            //
//                                                                            //
//  Unless required by applicable law or agreed to in writing, software       //
//  distributed under the License is distributed on an "AS IS" BASIS,         //
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.  //
//  See the License for the specific language governing permissions and       //
//  limitations under the License.                                            //
//                                                                            //
////////////////////////////////////////////////////////////////////////////////

#ifndef FACTORAPPROX_TOOLS_CLI_HPP
#define FACTORAPPROX_TOOLS_CLI_HPP

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "factorapprox.hpp"

namespace factorapprox::cli {

enum ExitCode : int { ok = 0, parse = 2, solver = 3, optimization = 4, io = 5 };

inline int exit_code_for(Errc code) {
  switch (code) {
    case Errc::parse_error: return parse;
    case Errc::io_error: return io;
    case Errc::optimization_failed:
    case Errc::empty_scan: return optimization;
    default: return solver;
  }
}

inline bool verbose() {
  const char* v = std::getenv("FACTORAPPROX_VERBOSE");
  return v != nullptr && *v != '\0' && std::string_view(v) != "0";
}

struct Config {
  std::string input;
  std::string out;
  std::string trace_out;
  std::string format = "json";
  std::size_t order = 0;
  std::optional<double> fix_a;
  std::optional<double> grid_min;
  std::optional<double> grid_max;
  std::optional<std::size_t> grid_points;
  std::string spacing;
  std::string branch = "auto";
  std::optional<std::size_t> select;
  std::vector<std::string> eval;
  double prefactor = 1;
};

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  void emit(const Config& c, std::string_view content) {
    if (c.out.empty())
      out_ << content;
    else
      write_file(c.out, content);
  }

  void note(std::string_view msg) {
    if (verbose()) err_ << msg << "\n";
  }

  std::ostream& err() { return err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

inline std::vector<Real> eval_points(const Config& c) {
  std::vector<Real> xs;
  for (const auto& s : c.eval) {
    try {
      xs.push_back(parse_real(s));
    } catch (const Error&) {
      fail(Errc::parse_error, "--eval: not a number '" + s + "'");
    }
  }
  return xs;
}

inline BranchChoice branch_of(const Config& c) {
  if (c.branch == "auto") return BranchChoice::automatic;
  if (c.branch == "real") return BranchChoice::real;
  if (c.branch == "conjugate") return BranchChoice::conjugate;
  fail(Errc::parse_error, "--branch must be auto, real or conjugate");
}

inline Grid grid_of(const Config& c, Grid g) {
  if (c.grid_min) g.min = *c.grid_min;
  if (c.grid_max) g.max = *c.grid_max;
  if (c.grid_points) g.points = *c.grid_points;
  if (c.spacing == "log") g.spacing = Spacing::log;
  else if (c.spacing == "linear") g.spacing = Spacing::linear;
  else if (!c.spacing.empty()) fail(Errc::parse_error, "--spacing must be log or linear");
  g.validate();
  return g;
}

inline OptimizeOptions optimize_options(const Config& c) {
  OptimizeOptions o;
  o.branch = branch_of(c);
  if (o.branch == BranchChoice::conjugate)
    o.conjugate_grid = grid_of(c, default_conjugate_grid());
  else
    o.grid = grid_of(c, default_real_grid());
  o.select = c.select;
  return o;
}

inline void require_format(const Config& c, std::initializer_list<std::string_view> allowed) {
  for (auto a : allowed)
    if (c.format == a) return;
  std::string list;
  for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  fail(Errc::parse_error, "--format must be one of: " + list);
}

inline std::string traces_text(const std::vector<OptimizationTrace>& traces, std::string_view note = {}) {
  std::string text;
  for (std::size_t i = 0; i < traces.size(); ++i) text += serialize_trace(traces[i], i + 1 == traces.size() ? note : "");
  return text;
}

// ---------------------------------------------------------------- commands

inline int cmd_fit(Session& s, const Config& c) {
  require_format(c, {"json"});
  const auto file = parse_series(read_file(c.input));
  const std::size_t k = c.order ? c.order : series_order(file.series);
  FitOptions options;
  if (c.fix_a) options.fixed_node = static_cast<Real>(*c.fix_a);
  options.optimize = optimize_options(c);
  try {
    const auto result = fit(file.series, k, options);
    if (result.optimization) {
      if (!c.trace_out.empty()) write_file(c.trace_out, traces_text(result.optimization->traces));
      for (const auto& cand : result.optimization->trace.candidates)
        s.note("candidate A=" + format_real(cand.node.real()) + (cand.node.imag() != 0 ? "+i" + format_real(cand.node.imag()) : "") +
               " B=" + format_real(cand.amplitude) + " curvature=" + format_real(cand.curvature));
    }
    s.note("moment residual " + format_real(result.approximant.diagnostics.moment_residual));
    s.emit(c, serialize_approximant(result.approximant));
  } catch (const OptimizationFailed& e) {
    if (!c.trace_out.empty()) write_file(c.trace_out, traces_text(e.traces(), e.what()));
    throw;
  }
  return ok;
}

inline int cmd_eval(Session& s, const Config& c) {
  require_format(c, {"csv", "json"});
  const auto f = parse_approximant(read_file(c.input));
  const auto xs = eval_points(c);
  if (xs.empty()) fail(Errc::parse_error, "--eval needs at least one point");
  std::vector<Real> values;
  for (Real x : xs) values.push_back(evaluate(f, x, static_cast<Real>(c.prefactor)));
  std::ostringstream o;
  if (c.format == "csv") {
    o << "# factorapprox " << kVersion << "\nx,value\n";
    for (std::size_t i = 0; i < xs.size(); ++i) o << format_real(xs[i]) << ',' << format_real(values[i]) << "\n";
  } else {
    Json j;
    j["points"] = Json::array();
    for (std::size_t i = 0; i < xs.size(); ++i)
      j["points"].push_back({{"x", format_real(xs[i])}, {"value", format_real(values[i])}});
    o << j.dump(2) << "\n";
  }
  s.emit(c, o.str());
  return ok;
}

inline int cmd_asymptote(Session& s, const Config& c) {
  require_format(c, {"csv", "json"});
  const auto f = parse_approximant(read_file(c.input));
  const auto a = asymptote(f);
  std::ostringstream o;
  if (c.format == "csv") {
    o << "# factorapprox " << kVersion << "\namplitude,exponent\n"
      << format_real(a.amplitude) << ',' << format_real(a.exponent) << "\n";
  } else {
    Json j{{"amplitude", format_real(a.amplitude)}, {"exponent", format_real(a.exponent)}};
    o << j.dump(2) << "\n";
  }
  s.emit(c, o.str());
  return ok;
}

inline int cmd_scan(Session& s, const Config& c) {
  require_format(c, {"csv"});
  const auto file = parse_series(read_file(c.input));
  const std::size_t k = c.order ? c.order : series_order(file.series);
  if (k % 2 != 1 || k < 3) fail(Errc::invalid_argument, "scan needs an odd order >= 3");
  const auto m = real_moments(file.series, k);
  const auto choice = branch_of(c);
  const bool conjugate = choice == BranchChoice::conjugate;
  const Grid grid = grid_of(c, conjugate ? default_conjugate_grid() : default_real_grid());
  std::string text;
  try {
    text = serialize_trace(conjugate ? conjugate_branch(m, grid) : scan(m, grid));
  } catch (const Error& e) {
    // Empty scans are reported in the footer; the command still succeeds.
    if (e.code() != Errc::empty_scan) throw;
    OptimizationTrace empty;
    empty.branch = conjugate ? Branch::conjugate : Branch::real;
    empty.grid = grid;
    text = serialize_trace(empty, e.what());
  }
  s.emit(c, text);
  return ok;
}

inline std::string report_text(const Config& c, const std::vector<ReportRow>& rows) {
  return c.format == "csv" ? serialize_report_csv(rows) : serialize_report_json(rows);
}

inline int cmd_corpus(Session& s, const Config& c) {
  require_format(c, {"csv", "json"});
  const auto rows = run_corpus();
  for (const auto& r : rows)
    if (r.status != "ok") s.note(r.case_name + " " + r.method + ": " + r.status);
  s.emit(c, report_text(c, rows));
  return ok;
}

inline int cmd_compare(Session& s, const Config& c) {
  require_format(c, {"csv", "json"});
  const CaseId id = [&] {
    try {
      return parse_case_id(c.input);
    } catch (const Error& e) {
      fail(Errc::parse_error, e.detail());
    }
  }();
  auto xs = eval_points(c);
  if (xs.empty()) xs.push_back(default_point(id));
  std::vector<Method> methods = corpus_methods();
  if (c.fix_a) methods[1] = Method::fixed3(static_cast<Real>(*c.fix_a));
  std::vector<ReportRow> rows;
  for (Real x : xs)
    for (const auto& m : methods) rows.push_back(run_case(id, m, x));
  s.emit(c, report_text(c, rows));
  return ok;
}

/// Identifies any file this tool writes and prints a one-line summary.
inline int cmd_inspect(Session& s, const Config& c) {
  const auto text = read_file(c.input);
  std::ostringstream o;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const Json j = detail::parse_json(text, "file");
    if (j.contains("pairs")) {
      const auto f = parse_approximant(text);
      o << "approximant order=" << f.order << " pairs=" << f.pairs.size()
        << " provenance=" << to_string(f.provenance.kind) << "\n";
    } else if (j.contains("coefficients")) {
      const auto f = parse_series(text);
      o << "series name=" << f.name << " order=" << series_order(f.series)
        << " backend=" << (is_exact(f.series) ? "exact" : "float") << "\n";
    } else if (j.contains("rows")) {
      o << "report rows=" << parse_report_json(text).size() << "\n";
    } else if (j.contains("points")) {
      o << "evaluation points=" << j["points"].size() << "\n";
    } else if (j.contains("amplitude")) {
      o << "asymptote amplitude=" << detail::string_field(j, "amplitude", "file")
        << " exponent=" << detail::string_field(j, "exponent", "file") << "\n";
    } else {
      fail(Errc::parse_error, "unrecognized JSON file");
    }
  } else if (text.find(std::string(kTraceHeader)) != std::string::npos) {
    std::size_t total = 0;
    std::size_t pos = 0;
    // A fit trace may hold one table per scanned branch.
    while (true) {
      const auto next = text.find("# factorapprox", pos + 1);
      const auto t = parse_trace(std::string_view(text).substr(pos, next == std::string::npos ? std::string::npos : next - pos));
      o << "trace branch=" << to_string(t.branch) << " samples=" << t.samples.size()
        << " candidates=" << t.candidates.size() << "\n";
      ++total;
      if (next == std::string::npos) break;
      pos = next;
    }
  } else if (text.find(std::string(kReportHeader)) != std::string::npos) {
    o << "report rows=" << parse_report_csv(text).size() << "\n";
  } else if (text.find("\nx,value\n") != std::string::npos) {
    o << "evaluation points=" << std::count(text.begin(), text.end(), '\n') - 2 << "\n";
  } else if (text.find("\namplitude,exponent\n") != std::string::npos) {
    o << "asymptote\n";
  } else {
    fail(Errc::parse_error, "unrecognized file");
  }
  s.emit(c, o.str());
  return ok;
}

// -------------------------------------------------------------------- main

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Self-similar factor approximants: fit, evaluate and extrapolate short power series."};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Config c;
  Session session(out, err);

  auto add_output = [&](CLI::App* sub, const std::string& default_format) {
    sub->add_option("--out", c.out, "Output file (default: standard output)");
    sub->add_option("--format", c.format, "Output format")->default_str(default_format);
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid-min", c.grid_min, "Lower end of the scan grid");
    sub->add_option("--grid-max", c.grid_max, "Upper end of the scan grid");
    sub->add_option("--grid-points", c.grid_points, "Number of grid points (>= 3)");
    sub->add_option("--spacing", c.spacing, "Grid spacing: log or linear");
    sub->add_option("--branch", c.branch, "Branch: auto, real or conjugate")->default_str("auto");
  };

  auto* fit_cmd = app.add_subcommand("fit", "Build an approximant from a series file");
  fit_cmd->add_option("series", c.input, "Series file")->required();
  fit_cmd->add_option("-k,--order", c.order, "Approximation order (default: series order)");
  fit_cmd->add_option("--fix-a", c.fix_a, "Hold node A fixed (odd orders)");
  fit_cmd->add_option("--select", c.select, "Candidate index overriding the default choice");
  fit_cmd->add_option("--trace", c.trace_out, "Also write the optimization trace");
  add_grid(fit_cmd);
  add_output(fit_cmd, "json");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate an approximant");
  eval_cmd->add_option("approximant", c.input, "Approximant file")->required();
  eval_cmd->add_option("--eval", c.eval, "Points x1,x2,...")->delimiter(',')->required();
  eval_cmd->add_option("--prefactor", c.prefactor, "Value of f0(x) (default 1)");
  add_output(eval_cmd, "csv");

  auto* asym_cmd = app.add_subcommand("asymptote", "Large-x amplitude and exponent");
  asym_cmd->add_option("approximant", c.input, "Approximant file")->required();
  add_output(asym_cmd, "json");

  auto* scan_cmd = app.add_subcommand("scan", "Tabulate B(A) and its stationary points");
  scan_cmd->add_option("series", c.input, "Series file")->required();
  scan_cmd->add_option("-k,--order", c.order, "Odd approximation order (default: series order)");
  add_grid(scan_cmd);
  add_output(scan_cmd, "csv");

  auto* corpus_cmd = app.add_subcommand("corpus", "Run every benchmark case with every method");
  add_output(corpus_cmd, "csv");

  auto* compare_cmd = app.add_subcommand("compare", "Compare the three methods on one benchmark case");
  compare_cmd->add_option("case", c.input, "Case id")->required();
  compare_cmd->add_option("--eval", c.eval, "Points x1,x2,... (default: the case's comparison point)")->delimiter(',');
  compare_cmd->add_option("--fix-a", c.fix_a, "Fixed node for the fixed3 method (default 1)");
  add_output(compare_cmd, "csv");

  auto* inspect_cmd = app.add_subcommand("inspect", "Identify and validate a file written by this tool");
  inspect_cmd->add_option("file", c.input, "File")->required();
  inspect_cmd->add_option("--out", c.out, "Output file (default: standard output)");

  const std::pair<CLI::App*, const char*> defaults[] = {{fit_cmd, "json"}, {eval_cmd, "csv"},   {asym_cmd, "json"},
                                                        {scan_cmd, "csv"}, {corpus_cmd, "csv"}, {compare_cmd, "csv"}};
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : parse;
  }
  for (const auto& [sub, fmt] : defaults)
    if (sub->parsed() && sub->count("--format") == 0) c.format = fmt;
  if (c.order == 1) {
    err << "error: order must be at least 2\n";
    return parse;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(session, c);
    if (eval_cmd->parsed()) return cmd_eval(session, c);
    if (asym_cmd->parsed()) return cmd_asymptote(session, c);
    if (scan_cmd->parsed()) return cmd_scan(session, c);
    if (corpus_cmd->parsed()) return cmd_corpus(session, c);
    if (compare_cmd->parsed()) return cmd_compare(session, c);
    if (inspect_cmd->parsed()) return cmd_inspect(session, c);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return ok;
}

}  // namespace factorapprox::cli

#endif
