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

#ifndef FACTORAPPROX_REPORT_HPP
#define FACTORAPPROX_REPORT_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "factorapprox/corpus.hpp"
#include "factorapprox/error.hpp"
#include "factorapprox/evaluate.hpp"
#include "factorapprox/fit.hpp"

namespace factorapprox {

enum class MethodKind { opt3, fixed3, even4 };

struct Method {
  MethodKind kind = MethodKind::opt3;
  Real fixed_node = 1;

  static Method opt3() { return {MethodKind::opt3, 1}; }
  static Method fixed3(Real A = 1) { return {MethodKind::fixed3, A}; }
  static Method even4() { return {MethodKind::even4, 1}; }

  std::size_t order() const { return kind == MethodKind::even4 ? 4 : 3; }

  std::string name() const {
    switch (kind) {
      case MethodKind::opt3: return "opt3";
      case MethodKind::fixed3: return "fixed3(" + format_real(fixed_node) + ")";
      case MethodKind::even4: return "even4";
    }
    return "opt3";
  }
};

inline Method parse_method(std::string_view text) {
  if (text == "opt3") return Method::opt3();
  if (text == "even4") return Method::even4();
  if (text.starts_with("fixed3(") && text.ends_with(")"))
    return Method::fixed3(parse_real(text.substr(7, text.size() - 8)));
  fail(Errc::parse_error, "unknown method '" + std::string(text) + "'");
}

/// One line of the comparison table. A row at x = inf compares the fitted
/// large-x amplitude with the reference amplitude.
struct ReportRow {
  std::string case_name;
  std::string method;
  Real x = 0;
  Real approx = std::numeric_limits<Real>::quiet_NaN();
  Real exact = std::numeric_limits<Real>::quiet_NaN();
  Real error_pct = std::numeric_limits<Real>::quiet_NaN();
  Real amplitude = std::numeric_limits<Real>::quiet_NaN();
  Real exponent = std::numeric_limits<Real>::quiet_NaN();
  std::string status = "ok";
};

/// Approximant a method produces for a case.
inline FactorApproximant corpus_approximant(CaseId id, const Method& method) {
  const auto series = corpus_series(id, method.order());
  FitOptions options;
  if (method.kind == MethodKind::fixed3) options.fixed_node = method.fixed_node;
  options.optimize.branch = preferred_branch(id);
  return fit(series, method.order(), options).approximant;
}

inline ReportRow run_case(CaseId id, const Method& method, std::optional<Real> point = std::nullopt) {
  ReportRow row;
  row.case_name = std::string(to_string(id));
  row.method = method.name();
  row.x = point ? *point : default_point(id);
  try {
    const auto f = corpus_approximant(id, method);
    // A factor with a negative real node has no real large-x limit; the
    // value at finite x is still reported.
    std::optional<Error> asymptote_error;
    try {
      const auto form = asymptote(f);
      row.amplitude = form.amplitude;
      row.exponent = form.exponent;
    } catch (const Error& e) {
      asymptote_error = e;
    }
    if (std::isinf(row.x)) {
      if (asymptote_error) throw *asymptote_error;
      row.approx = row.amplitude;
      if (has_reference_asymptote(id)) row.exact = corpus_asymptote(id).amplitude;
    } else {
      row.approx = evaluate(f, row.x, 1);
      if (has_oracle(id)) row.exact = corpus_exact(id, row.x);
    }
    if (std::isfinite(row.exact)) row.error_pct = percentage_error(row.approx, row.exact);
    if (asymptote_error) row.status = "no-asymptote:" + std::string(to_string(asymptote_error->code()));
  } catch (const Error& e) {
    row.status = std::string(to_string(e.code()));
  }
  return row;
}

inline std::vector<Method> corpus_methods() { return {Method::opt3(), Method::fixed3(1), Method::even4()}; }

/// Every case under every method, ordered by case then method.
inline std::vector<ReportRow> run_corpus() {
  std::vector<ReportRow> rows;
  for (auto id : kAllCases)
    for (const auto& method : corpus_methods()) rows.push_back(run_case(id, method));
  return rows;
}

}  // namespace factorapprox

#endif
