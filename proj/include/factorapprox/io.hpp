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

#ifndef FACTORAPPROX_IO_HPP
#define FACTORAPPROX_IO_HPP

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "factorapprox/error.hpp"
#include "factorapprox/factor_solver.hpp"
#include "factorapprox/optimizer.hpp"
#include "factorapprox/report.hpp"
#include "factorapprox/scalar.hpp"
#include "factorapprox/series.hpp"

#ifndef FACTORAPPROX_VERSION
#define FACTORAPPROX_VERSION "1.0.0"
#endif

namespace factorapprox {

inline constexpr std::string_view kVersion = FACTORAPPROX_VERSION;

using Json = nlohmann::json;

// ---------------------------------------------------------------- files

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(Errc::io_error, "error while reading '" + path + "'");
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::io_error, "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(Errc::io_error, "error while writing '" + path + "'");
}

namespace detail {

inline Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    fail(Errc::parse_error, std::string(what) + ": malformed JSON at line " + std::to_string(line));
  }
}

inline const Json& field(const Json& obj, std::string_view key, std::string_view where) {
  if (!obj.is_object()) fail(Errc::parse_error, std::string(where) + " must be an object");
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) fail(Errc::parse_error, "missing field '" + std::string(key) + "' in " + std::string(where));
  return *it;
}

inline std::string string_field(const Json& obj, std::string_view key, std::string_view where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string()) fail(Errc::parse_error, "field '" + std::string(key) + "' in " + std::string(where) + " must be a string");
  return v.get<std::string>();
}

inline Real real_field(const Json& obj, std::string_view key, std::string_view where) {
  const auto text = string_field(obj, key, where);
  try {
    return parse_real(text);
  } catch (const Error&) {
    fail(Errc::parse_error, "field '" + std::string(key) + "' in " + std::string(where) + ": not a number '" + text + "'");
  }
}

}  // namespace detail

// --------------------------------------------------------------- series

struct SeriesFile {
  std::string name;
  AnySeries series;
};

/// {"name", "f0", "coefficients": ["p/q" | decimal, ...], "multiplier"?}.
/// Coefficients are normalized by the first one; the optional multiplier
/// scales the normalized series.
inline SeriesFile parse_series(std::string_view text, std::size_t max_order = kDefaultMaxOrder) {
  const Json j = detail::parse_json(text, "series file");
  SeriesFile out;
  out.name = j.contains("name") ? detail::string_field(j, "name", "series file") : std::string();
  const std::string tag = j.contains("f0") ? detail::string_field(j, "f0", "series file") : std::string("unit");
  const auto& coeffs = detail::field(j, "coefficients", "series file");
  if (!coeffs.is_array() || coeffs.empty()) fail(Errc::parse_error, "field 'coefficients' must be a non-empty array");
  std::vector<ScalarLiteral> raw;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_string())
      fail(Errc::parse_error, "coefficients[" + std::to_string(i) + "] must be a string (\"p/q\" or decimal)");
    try {
      raw.push_back(parse_scalar_literal(coeffs[i].get<std::string>()));
    } catch (const Error& e) {
      fail(Errc::parse_error, "coefficients[" + std::to_string(i) + "]: " + e.detail());
    }
  }
  out.series = normalize_literals(raw, raw.size() - 1, tag, max_order);
  if (j.contains("multiplier")) {
    ScalarLiteral mult;
    try {
      mult = parse_scalar_literal(detail::string_field(j, "multiplier", "series file"));
    } catch (const Error& e) {
      fail(Errc::parse_error, "multiplier: " + e.detail());
    }
    if (auto* exact = std::get_if<ExactSeries>(&out.series); exact && std::holds_alternative<Rational>(mult)) {
      exact->multiplier *= std::get<Rational>(mult);
    } else {
      FloatSeries f;
      f.prefactor_tag = series_prefactor_tag(out.series);
      f.coefficients = series_coefficients(out.series);
      f.multiplier = series_multiplier(out.series) * std::visit([](const auto& v) { return to_real(v); }, mult);
      out.series = std::move(f);
    }
  }
  return out;
}

inline std::string serialize_series(const std::string& name, const AnySeries& series) {
  Json j;
  j["name"] = name;
  j["f0"] = series_prefactor_tag(series);
  j["coefficients"] = Json::array();
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        for (const auto& c : s.coefficients) {
          if constexpr (std::is_same_v<S, ExactSeries>)
            j["coefficients"].push_back(format_rational(c));
          else
            j["coefficients"].push_back(format_real(c));
        }
        if constexpr (std::is_same_v<S, ExactSeries>)
          j["multiplier"] = format_rational(s.multiplier);
        else
          j["multiplier"] = format_real(s.multiplier);
      },
      series);
  return j.dump(2) + "\n";
}

// ----------------------------------------------------------- approximant

inline Pairing parse_pairing(std::string_view s) {
  if (s == "real") return Pairing::real;
  if (s == "conjugate-lead") return Pairing::conjugate_lead;
  if (s == "conjugate-follow") return Pairing::conjugate_follow;
  fail(Errc::parse_error, "unknown pairing '" + std::string(s) + "'");
}

inline ProvenanceKind parse_provenance_kind(std::string_view s) {
  if (s == "even-exact") return ProvenanceKind::even_exact;
  if (s == "odd-fixed-node") return ProvenanceKind::odd_fixed_node;
  if (s == "odd-optimized") return ProvenanceKind::odd_optimized;
  fail(Errc::parse_error, "unknown provenance '" + std::string(s) + "'");
}

inline Json approximant_json(const FactorApproximant& f) {
  Json j;
  j["order"] = f.order;
  j["prefactor"] = {{"tag", f.prefactor_tag}, {"multiplier", format_real(f.prefactor_multiplier)}};
  j["pairs"] = Json::array();
  for (const auto& p : f.pairs)
    j["pairs"].push_back({{"A_re", format_real(p.A.real())},
                          {"A_im", format_real(p.A.imag())},
                          {"n_re", format_real(p.n.real())},
                          {"n_im", format_real(p.n.imag())},
                          {"pairing", std::string(to_string(p.pairing))}});
  Json prov;
  prov["kind"] = std::string(to_string(f.provenance.kind));
  if (f.provenance.kind != ProvenanceKind::even_exact) {
    prov["free_node_re"] = format_real(f.provenance.free_node.real());
    prov["free_node_im"] = format_real(f.provenance.free_node.imag());
  }
  if (!f.provenance.branch.empty()) prov["branch"] = f.provenance.branch;
  if (f.provenance.candidate) prov["candidate"] = *f.provenance.candidate;
  j["provenance"] = prov;
  j["diagnostics"] = {{"hankel_condition", format_real(f.diagnostics.hankel_condition)},
                      {"vandermonde_condition", format_real(f.diagnostics.vandermonde_condition)},
                      {"moment_residual", format_real(f.diagnostics.moment_residual)},
                      {"flags", f.diagnostics.flags}};
  return j;
}

inline std::string serialize_approximant(const FactorApproximant& f) { return approximant_json(f).dump(2) + "\n"; }

inline FactorApproximant approximant_from_json(const Json& j) {
  const std::string where = "approximant";
  FactorApproximant f;
  const auto& order = detail::field(j, "order", where);
  if (!order.is_number_unsigned()) fail(Errc::parse_error, "field 'order' must be a nonnegative integer");
  f.order = order.get<std::size_t>();
  const auto& pre = detail::field(j, "prefactor", where);
  f.prefactor_tag = detail::string_field(pre, "tag", "prefactor");
  f.prefactor_multiplier = detail::real_field(pre, "multiplier", "prefactor");
  const auto& pairs = detail::field(j, "pairs", where);
  if (!pairs.is_array()) fail(Errc::parse_error, "field 'pairs' must be an array");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string w = "pairs[" + std::to_string(i) + "]";
    FactorPair p;
    p.A = {detail::real_field(pairs[i], "A_re", w), detail::real_field(pairs[i], "A_im", w)};
    p.n = {detail::real_field(pairs[i], "n_re", w), detail::real_field(pairs[i], "n_im", w)};
    p.pairing = pairs[i].contains("pairing") ? parse_pairing(detail::string_field(pairs[i], "pairing", w))
                                             : (p.A.imag() == 0 ? Pairing::real
                                                                : (p.A.imag() > 0 ? Pairing::conjugate_lead
                                                                                  : Pairing::conjugate_follow));
    f.pairs.push_back(p);
  }
  if (j.contains("provenance")) {
    const auto& prov = j["provenance"];
    f.provenance.kind = parse_provenance_kind(detail::string_field(prov, "kind", "provenance"));
    if (prov.contains("free_node_re"))
      f.provenance.free_node = {detail::real_field(prov, "free_node_re", "provenance"),
                                detail::real_field(prov, "free_node_im", "provenance")};
    if (prov.contains("branch")) f.provenance.branch = detail::string_field(prov, "branch", "provenance");
    if (prov.contains("candidate")) f.provenance.candidate = prov["candidate"].get<std::size_t>();
  }
  if (j.contains("diagnostics")) {
    const auto& d = j["diagnostics"];
    f.diagnostics.hankel_condition = detail::real_field(d, "hankel_condition", "diagnostics");
    f.diagnostics.vandermonde_condition = detail::real_field(d, "vandermonde_condition", "diagnostics");
    f.diagnostics.moment_residual = detail::real_field(d, "moment_residual", "diagnostics");
    if (d.contains("flags")) f.diagnostics.flags = d["flags"].get<std::vector<std::string>>();
  }
  return f;
}

inline FactorApproximant parse_approximant(std::string_view text) {
  try {
    return approximant_from_json(detail::parse_json(text, "approximant file"));
  } catch (const Json::exception& e) {
    fail(Errc::parse_error, std::string("approximant file: ") + e.what());
  }
}

// ------------------------------------------------------------ csv helpers

namespace detail {

inline std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

/// "key=value" pairs of a footer line, split on spaces.
inline std::vector<std::pair<std::string, std::string>> key_values(std::string_view body) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& tok : split(body, ' ')) {
    if (tok.empty()) continue;
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    out.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
  }
  return out;
}

inline std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace detail

// ----------------------------------------------------------------- trace

inline constexpr std::string_view kTraceHeader = "A,B,beta,dBdA,solvable";

inline std::string serialize_trace(const OptimizationTrace& t, std::string_view note = {}) {
  std::ostringstream out;
  out << "# factorapprox " << kVersion << "\n";
  out << "# branch=" << to_string(t.branch) << " spacing=" << to_string(t.grid.spacing)
      << " min=" << format_real(t.grid.min) << " max=" << format_real(t.grid.max) << " points=" << t.grid.points
      << "\n";
  out << kTraceHeader << "\n";
  for (const auto& s : t.samples)
    out << format_real(s.A) << ',' << format_real(s.B) << ',' << format_real(s.beta) << ',' << format_real(s.dBdA)
        << ',' << (s.solvable ? 1 : 0) << "\n";
  for (std::size_t i = 0; i < t.candidates.size(); ++i) {
    const auto& c = t.candidates[i];
    out << "# candidate index=" << i << " selected=" << (t.selected && *t.selected == i ? 1 : 0)
        << " branch=" << to_string(c.branch) << " parameter=" << format_real(c.parameter)
        << " A_re=" << format_real(c.node.real()) << " A_im=" << format_real(c.node.imag())
        << " B=" << format_real(c.amplitude) << " beta=" << format_real(c.exponent)
        << " d2BdA2=" << format_real(c.second_derivative) << " curvature=" << format_real(c.curvature)
        << " certificate=" << format_real(c.certificate);
    if (c.mirror) out << " mirror=" << format_real(*c.mirror);
    out << " flags=" << (c.flags.empty() ? std::string("none") : detail::join(c.flags, '|')) << "\n";
  }
  if (t.candidates.empty()) out << "# candidates=none\n";
  if (!note.empty()) out << "# note " << note << "\n";
  return out.str();
}

inline OptimizationTrace parse_trace(std::string_view text) {
  OptimizationTrace t;
  bool header = false;
  std::size_t lineno = 0;
  for (const auto& line : detail::lines_of(text)) {
    ++lineno;
    if (line.empty()) continue;
    const auto where = "trace line " + std::to_string(lineno);
    if (line.front() == '#') {
      const std::string_view body = std::string_view(line).substr(1);
      if (body.starts_with(" branch=")) {
        for (const auto& [k, v] : detail::key_values(body)) {
          if (k == "branch") t.branch = v == "conjugate" ? Branch::conjugate : Branch::real;
          else if (k == "spacing") t.grid.spacing = v == "linear" ? Spacing::linear : Spacing::log;
          else if (k == "min") t.grid.min = parse_real(v);
          else if (k == "max") t.grid.max = parse_real(v);
          else if (k == "points") t.grid.points = static_cast<std::size_t>(std::stoull(v));
        }
      } else if (body.starts_with(" candidate ")) {
        Candidate c;
        Real re = 0, im = 0;
        std::optional<std::size_t> index;
        bool selected = false;
        for (const auto& [k, v] : detail::key_values(body.substr(11))) {
          try {
            if (k == "index") index = static_cast<std::size_t>(std::stoull(v));
            else if (k == "selected") selected = v == "1";
            else if (k == "branch") c.branch = v == "conjugate" ? Branch::conjugate : Branch::real;
            else if (k == "parameter") c.parameter = parse_real(v);
            else if (k == "A_re") re = parse_real(v);
            else if (k == "A_im") im = parse_real(v);
            else if (k == "B") c.amplitude = parse_real(v);
            else if (k == "beta") c.exponent = parse_real(v);
            else if (k == "d2BdA2") c.second_derivative = parse_real(v);
            else if (k == "curvature") c.curvature = parse_real(v);
            else if (k == "certificate") c.certificate = parse_real(v);
            else if (k == "mirror") c.mirror = parse_real(v);
            else if (k == "flags" && v != "none") c.flags = detail::split(v, '|');
          } catch (const std::exception&) {
            fail(Errc::parse_error, where + ": bad value for '" + k + "'");
          }
        }
        c.node = {re, im};
        if (selected) t.selected = index ? *index : t.candidates.size();
        t.candidates.push_back(std::move(c));
      }
      continue;
    }
    if (!header) {
      if (line != kTraceHeader) fail(Errc::parse_error, where + ": expected header '" + std::string(kTraceHeader) + "'");
      header = true;
      continue;
    }
    const auto cells = detail::split(line, ',');
    if (cells.size() != 5) fail(Errc::parse_error, where + ": expected 5 columns");
    TraceSample s;
    try {
      s.A = parse_real(cells[0]);
      s.B = parse_real(cells[1]);
      s.beta = parse_real(cells[2]);
      s.dBdA = parse_real(cells[3]);
    } catch (const Error& e) {
      fail(Errc::parse_error, where + ": " + e.detail());
    }
    if (cells[4] != "0" && cells[4] != "1") fail(Errc::parse_error, where + ": solvable must be 0 or 1");
    s.solvable = cells[4] == "1";
    t.samples.push_back(s);
  }
  if (!header) fail(Errc::parse_error, "trace has no header line");
  return t;
}

// ---------------------------------------------------------------- report

inline constexpr std::string_view kReportHeader = "case,method,x,approx,exact,error_pct,amplitude,exponent,status";

inline std::string serialize_report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "# factorapprox " << kVersion << "\n" << kReportHeader << "\n";
  for (const auto& r : rows)
    out << r.case_name << ',' << r.method << ',' << format_real(r.x) << ',' << format_real(r.approx) << ','
        << format_real(r.exact) << ',' << format_real(r.error_pct) << ',' << format_real(r.amplitude) << ','
        << format_real(r.exponent) << ',' << r.status << "\n";
  return out.str();
}

inline std::vector<ReportRow> parse_report_csv(std::string_view text) {
  std::vector<ReportRow> rows;
  bool header = false;
  std::size_t lineno = 0;
  for (const auto& line : detail::lines_of(text)) {
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    const auto where = "report line " + std::to_string(lineno);
    if (!header) {
      if (line != kReportHeader) fail(Errc::parse_error, where + ": expected header '" + std::string(kReportHeader) + "'");
      header = true;
      continue;
    }
    const auto c = detail::split(line, ',');
    if (c.size() != 9) fail(Errc::parse_error, where + ": expected 9 columns");
    ReportRow r;
    r.case_name = c[0];
    r.method = c[1];
    try {
      r.x = parse_real(c[2]);
      r.approx = parse_real(c[3]);
      r.exact = parse_real(c[4]);
      r.error_pct = parse_real(c[5]);
      r.amplitude = parse_real(c[6]);
      r.exponent = parse_real(c[7]);
    } catch (const Error& e) {
      fail(Errc::parse_error, where + ": " + e.detail());
    }
    r.status = c[8];
    rows.push_back(std::move(r));
  }
  if (!header) fail(Errc::parse_error, "report has no header line");
  return rows;
}

inline std::string serialize_report_json(const std::vector<ReportRow>& rows) {
  Json j;
  j["rows"] = Json::array();
  for (const auto& r : rows)
    j["rows"].push_back({{"case", r.case_name},
                         {"method", r.method},
                         {"x", format_real(r.x)},
                         {"approx", format_real(r.approx)},
                         {"exact", format_real(r.exact)},
                         {"error_pct", format_real(r.error_pct)},
                         {"amplitude", format_real(r.amplitude)},
                         {"exponent", format_real(r.exponent)},
                         {"status", r.status}});
  return j.dump(2) + "\n";
}

inline std::vector<ReportRow> parse_report_json(std::string_view text) {
  const Json j = detail::parse_json(text, "report file");
  std::vector<ReportRow> rows;
  const auto& arr = detail::field(j, "rows", "report file");
  if (!arr.is_array()) fail(Errc::parse_error, "field 'rows' must be an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = "rows[" + std::to_string(i) + "]";
    ReportRow r;
    r.case_name = detail::string_field(arr[i], "case", w);
    r.method = detail::string_field(arr[i], "method", w);
    r.x = detail::real_field(arr[i], "x", w);
    r.approx = detail::real_field(arr[i], "approx", w);
    r.exact = detail::real_field(arr[i], "exact", w);
    r.error_pct = detail::real_field(arr[i], "error_pct", w);
    r.amplitude = detail::real_field(arr[i], "amplitude", w);
    r.exponent = detail::real_field(arr[i], "exponent", w);
    r.status = detail::string_field(arr[i], "status", w);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace factorapprox

#endif
