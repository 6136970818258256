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

// Acceptance criteria 1-9: one PASS/FAIL line each, measured values below.
// Exit status is nonzero when any criterion fails.

#include <factorapprox.hpp>

#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "oracles.hpp"

using namespace factorapprox;

namespace {

struct Criterion {
  std::string id;
  std::string title;
  bool pass = true;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    lines.push_back(std::string(ok ? "ok   " : "MISS ") + what);
  }
  void note(const std::string& what) { lines.push_back("     " + what); }
};

std::vector<Criterion> results;

std::string fmt(Real v, int digits = 6) {
  std::ostringstream o;
  o.precision(digits);
  o << static_cast<double>(v);
  return o.str();
}

bool within_abs(Real v, Real target, Real tol) { return std::isfinite(v) && std::fabs(v - target) <= tol; }
bool within_rel(Real v, Real target, Real tol) { return std::isfinite(v) && std::fabs(v - target) <= tol * std::fabs(target); }

void abs_check(Criterion& c, const std::string& name, Real v, Real target, Real tol) {
  c.check(within_abs(v, target, tol), name + " = " + fmt(v) + " (target " + fmt(target) + " +- " + fmt(tol) + ")");
}

void rel_check(Criterion& c, const std::string& name, Real v, Real target, Real tol) {
  c.check(within_rel(v, target, tol),
          name + " = " + fmt(v, 8) + " (target " + fmt(target, 8) + " +- " + fmt(100 * tol) + "%)");
}

// Every approximant and every optimum produced below, for 9(c) and 9(d).
struct Produced {
  std::string label;
  FactorApproximant f;
  std::vector<Real> source;  // a_0..a_k
};
std::vector<Produced> produced;
std::vector<std::pair<std::string, OptimizationResult>> optima;

FactorApproximant build(CaseId id, const Method& method) {
  const std::string label = std::string(to_string(id)) + " " + method.name();
  for (const auto& p : produced)
    if (p.label == label) return p.f;
  const auto series = corpus_series(id, method.order());
  FitOptions options;
  if (method.kind == MethodKind::fixed3) options.fixed_node = method.fixed_node;
  options.optimize.branch = preferred_branch(id);
  auto r = fit(series, method.order(), options);
  produced.push_back({label, r.approximant, series_coefficients(series)});
  if (r.optimization) optima.emplace_back(label, *r.optimization);
  return r.approximant;
}

std::optional<FactorApproximant> try_build(Criterion& c, CaseId id, const Method& method) {
  try {
    return build(id, method);
  } catch (const Error& e) {
    c.check(false, method.name() + ": " + e.what());
    return std::nullopt;
  }
}

void error_check(Criterion& c, CaseId id, const Method& method, Real x, Real target, Real tol) {
  const auto f = try_build(c, id, method);
  if (!f) return;
  try {
    const Real approx = evaluate(*f, x);
    const Real err = percentage_error(approx, corpus_exact(id, x));
    abs_check(c, method.name() + " error at x=" + fmt(x) + " [%]", err, target, tol);
  } catch (const Error& e) {
    c.check(false, method.name() + ": " + e.what());
  }
}

LogMoments<Real> moments3(CaseId id) { return real_moments(corpus_series(id, 3), 3); }

// ------------------------------------------------------------------ criteria

void criterion_1() {
  Criterion c{"1", "partition function, optimized order 3"};
  const auto f = try_build(c, CaseId::partition, Method::opt3());
  if (f && f->pairs.size() == 2) {
    rel_check(c, "A", f->pairs[0].A.real(), 3.678882L, 0.005L);
    rel_check(c, "A2", f->pairs[1].A.real(), 16.099756L, 1e-3L);
    rel_check(c, "n1", f->pairs[0].n.real(), -0.132943L, 1e-3L);
    rel_check(c, "n2", f->pairs[1].n.real(), -0.016206L, 1e-3L);
    const auto a = asymptote(*f);
    abs_check(c, "amplitude", a.amplitude, 0.804L, 0.002L);
    abs_check(c, "exponent", a.exponent, -0.149L, 0.001L);
  }
  results.push_back(c);
}

void criterion_2() {
  Criterion c{"2", "anharmonic oscillator, three methods"};
  const struct {
    Method m;
    Real amp, amp_tol, exp, exp_tol;
    bool exp_relative;
  } rows[] = {{Method::opt3(), 0.759L, 0.01L, 0.269L, 0.005L, false},
              {Method::fixed3(1), 0.611L, 0.01L, 0.590L, 0.01L, true},
              {Method::even4(), 0.755L, 0.01L, 0.231L, 0.01L, true}};
  for (const auto& r : rows) {
    const auto f = try_build(c, CaseId::anharmonic, r.m);
    if (!f) continue;
    const auto a = asymptote(*f);
    rel_check(c, r.m.name() + " amplitude", a.amplitude, r.amp, r.amp_tol);
    if (r.exp_relative)
      rel_check(c, r.m.name() + " exponent", a.exponent, r.exp, r.exp_tol);
    else
      abs_check(c, r.m.name() + " exponent", a.exponent, r.exp, r.exp_tol);
  }
  results.push_back(c);
}

void criterion_3() {
  Criterion c{"3", "polymer expansion factor"};
  const struct {
    Method m;
    Real nu, tol;
  } rows[] = {{Method::opt3(), 0.579L, 0.002L}, {Method::even4(), 0.585L, 0.002L}, {Method::fixed3(1), 0.610L, 0.003L}};
  for (const auto& r : rows) {
    const auto f = try_build(c, CaseId::polymer, r.m);
    if (!f) continue;
    abs_check(c, r.m.name() + " nu", polymer_exponent(*f), r.nu, r.tol);
    if (r.m.kind == MethodKind::opt3) {
      const auto a = asymptote(*f);
      rel_check(c, "opt3 amplitude", a.amplitude, 1.569L, 0.01L);
      abs_check(c, "opt3 exponent", a.exponent, 0.315L, 0.003L);
      const auto ref = corpus_asymptote(CaseId::polymer);
      c.note("reference law " + fmt(ref.amplitude) + " z^" + fmt(ref.exponent) + ": exponent differs by " +
             fmt(a.exponent - ref.exponent));
    }
  }
  results.push_back(c);
}

void criterion_4() {
  Criterion c{"4", "critical index from the epsilon expansion"};
  if (const auto f = try_build(c, CaseId::epsilon_nu, Method::opt3())) {
    abs_check(c, "opt3 nu", critical_index_nu(*f), 0.614L, 0.02L);
    c.check(f->diagnostics.moment_residual <= 1e-9L, "opt3 moment residual = " + fmt(f->diagnostics.moment_residual) +
                                                         " (<= 1e-9)");
    const auto& r = optima.back().second;
    const Real cert = r.trace.candidates[*r.trace.selected].certificate;
    c.check(cert <= kStationarityTolerance, "opt3 stationarity certificate = " + fmt(cert) + " (<= 1e-6)");
  }
  if (const auto f = try_build(c, CaseId::epsilon_nu, Method::fixed3(1)))
    abs_check(c, "fixed3(1) nu", critical_index_nu(*f), 0.617L, 0.005L);
  if (const auto f = try_build(c, CaseId::epsilon_nu, Method::even4()))
    abs_check(c, "even4 nu", critical_index_nu(*f), 0.634L, 0.005L);
  results.push_back(c);
}

void criterion_5() {
  Criterion c{"5", "logarithm at x = 100"};
  const Real exact = corpus_exact(CaseId::log, 100);
  abs_check(c, "exact", exact, 0.046L, 0.0005L);
  if (const auto f = try_build(c, CaseId::log, Method::even4())) {
    const Real v = evaluate(*f, 100);
    abs_check(c, "even4 value", v, 0.054L, 0.002L);
    abs_check(c, "even4 error [%]", percentage_error(v, exact), 17, 2);
  }
  if (const auto f = try_build(c, CaseId::log, Method::fixed3(1))) {
    const Real v = evaluate(*f, 100);
    abs_check(c, "fixed3(1) value", v, 0.058L, 0.002L);
    abs_check(c, "fixed3(1) error [%]", percentage_error(v, exact), 26, 2);
  }
  // opt3 is held to the independently derived optimum.
  const auto roots = oracle::stationary_points_k3(moments3(CaseId::log).values);
  std::optional<FactorApproximant> opt;
  try {
    opt = build(CaseId::log, Method::opt3());
  } catch (const Error& e) {
    c.note(std::string("opt3: ") + e.what());
  }
  if (roots.empty()) {
    c.check(!opt, "opt3 agrees with the oracle: no stationary point of B(A) on [1e-3, 1e3]");
  } else if (!opt) {
    c.check(false, "opt3 found nothing but the oracle has " + std::to_string(roots.size()) + " stationary points");
  } else {
    const Real A = opt->provenance.free_node.real();
    bool matched = false;
    for (Real r : roots) matched = matched || within_rel(A, r, 1e-6L);
    c.check(matched, "opt3 node " + fmt(A, 10) + " matches an oracle stationary point");
    abs_check(c, "opt3 error [%]", percentage_error(evaluate(*opt, 100), exact), 13, 2);
  }
  results.push_back(c);
}

void criterion_6() {
  Criterion c{"6", "Debye-Hueckel function at x = 10"};
  error_check(c, CaseId::debye_huckel, Method::opt3(), 10, -13, 2);
  error_check(c, CaseId::debye_huckel, Method::fixed3(1), 10, -18, 2);
  error_check(c, CaseId::debye_huckel, Method::even4(), 10, -5, 2);
  results.push_back(c);
}

void criterion_7() {
  Criterion c{"7", "statistical integrals"};
  error_check(c, CaseId::stat_integral_1, Method::opt3(), 10, 56, 3);
  error_check(c, CaseId::stat_integral_1, Method::fixed3(1), 10, 1, 3);
  error_check(c, CaseId::stat_integral_1, Method::even4(), 10, 20, 3);
  if (const auto f = try_build(c, CaseId::stat_integral_2, Method::opt3())) {
    const Complex A = f->provenance.free_node;
    const Complex ref(3.370958L, -3.406509L);
    const Real d = std::min(std::abs(A - ref), std::abs(A - std::conj(ref))) / std::abs(ref);
    c.check(d <= 0.01L && f->provenance.branch == "conjugate",
            "second integral couple " + fmt(A.real(), 10) + " +- " + fmt(std::fabs(A.imag()), 10) +
                "i, relative distance " + fmt(d) + " (<= 1%)");
  }
  error_check(c, CaseId::stat_integral_2, Method::opt3(), 5, 12, 3);
  error_check(c, CaseId::stat_integral_2, Method::fixed3(1), 5, 5, 3);
  error_check(c, CaseId::stat_integral_2, Method::even4(), 5, 18, 3);
  results.push_back(c);
}

void criterion_8() {
  Criterion c{"8", "factorial function, optimized order 3"};
  if (const auto f = try_build(c, CaseId::factorial, Method::opt3())) {
    const auto a = asymptote(*f);
    abs_check(c, "exponent", a.exponent, 0.527L, 0.01L);
    rel_check(c, "amplitude", a.amplitude, 0.419L, 0.05L);
    c.check(f->diagnostics.moment_residual <= 1e-8L,
            "moment residual = " + fmt(f->diagnostics.moment_residual) + " (<= 1e-8)");
    c.note(std::string("near-degenerate flag: ") + (f->diagnostics.has(flag::near_degenerate) ? "set" : "unset"));
  }
  results.push_back(c);
}

void criterion_9a() {
  Criterion c{"9a", "exact reconstruction of class-R products"};
  std::vector<std::vector<std::pair<Complex, Complex>>> cases{{{1, 0.5L}, {2, -0.25L}}};
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> re(0.3, 3), im(0.2, 2), w(-0.8, 0.8);
  for (int k = 0; k < 3; ++k) {
    const Complex A(re(rng), im(rng));
    const Complex n(w(rng), w(rng));
    std::vector<std::pair<Complex, Complex>> pairs{{A, n}, {std::conj(A), std::conj(n)}};
    for (int extra = 0; extra < k; ++extra) pairs.emplace_back(Complex(re(rng) + 3 * extra + 3.5), Complex(w(rng)));
    cases.push_back(pairs);
  }
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& pairs = cases[i];
    const std::size_t k = 2 * pairs.size();
    const auto taylor = oracle::binomial_product(pairs, k);
    std::vector<Real> raw;
    for (const auto& t : taylor) raw.push_back(t.real());
    const auto series = normalize_series(raw, k);
    try {
      const auto f = solve_even(log_moments(series, k));
      produced.push_back({"class-R #" + std::to_string(i + 1), f, series.coefficients});
      Real worst = 0;
      for (int j = 0; j <= 1000; ++j) {
        const Real x = Real(j) / 100;
        const Real exact = oracle::direct_product(pairs, x).real();
        worst = std::max(worst, std::fabs(evaluate(f, x) / exact - 1));
      }
      c.check(worst <= 1e-8L, "function " + std::to_string(i + 1) + " (k = " + std::to_string(k) +
                                  "): sup relative error on [0, 10] = " + fmt(worst) + " (<= 1e-8)");
    } catch (const Error& e) {
      c.check(false, "function " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  results.push_back(c);
}

void criterion_9b() {
  Criterion c{"9b", "Prony round trip, 100 random instances"};
  std::mt19937_64 rng(20261015);
  Real worst = 0;
  int failures = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t p = 1 + static_cast<std::size_t>(rep % 3);
    const auto inst = oracle::random_prony(rng, p);
    std::vector<std::pair<Complex, Complex>> pairs;
    for (std::size_t i = 0; i < p; ++i) pairs.emplace_back(inst.nodes[i], inst.weights[i]);
    const auto b = oracle::forward_moments(pairs, 2 * p);
    LogMoments<Real> m;
    for (auto v : b) m.values.push_back(v.real());
    try {
      const auto f = solve_even(m);
      for (std::size_t i = 0; i < p; ++i) {
        Real best = std::numeric_limits<Real>::infinity();
        for (const auto& q : f.pairs) {
          const Real dn = std::abs(q.A - Complex(inst.nodes[i])) / std::fabs(inst.nodes[i]);
          const Real dw = std::abs(q.n - Complex(inst.weights[i])) / std::fabs(inst.weights[i]);
          best = std::min(best, std::max(dn, dw));
        }
        worst = std::max(worst, best);
      }
    } catch (const Error&) {
      ++failures;
    }
  }
  c.check(failures == 0, std::to_string(failures) + " solver failures");
  c.check(worst <= 1e-8L, "worst relative node/weight error = " + fmt(worst) + " (<= 1e-8)");
  results.push_back(c);
}

void criterion_9c() {
  Criterion c{"9c", "re-expansion reproduces the source coefficients"};
  Real worst = 0;
  std::string where;
  for (const auto& p : produced) {
    const std::size_t k = p.source.size() - 1;
    const auto back = reexpand(p.f, k);
    for (std::size_t n = 1; n <= k; ++n) {
      const Real scale = p.source[n] == 0 ? Real(1) : std::fabs(p.source[n]);
      const Real d = std::fabs(back[n - 1] - p.source[n]) / scale;
      if (d > worst) {
        worst = d;
        where = p.label + " a_" + std::to_string(n);
      }
    }
  }
  c.check(worst <= 1e-8L, std::to_string(produced.size()) + " approximants, worst relative deviation = " + fmt(worst) +
                              (where.empty() ? "" : " at " + where) + " (<= 1e-8)");
  results.push_back(c);
}

void criterion_9d() {
  Criterion c{"9d", "stationarity certificate at every optimum"};
  for (const auto& [label, r] : optima) {
    const auto& cand = r.trace.candidates[*r.trace.selected];
    const auto m = moments3(parse_case_id(label.substr(0, label.find(' '))));
    Real cert = std::numeric_limits<Real>::infinity();
    if (cand.branch == Branch::real) {
      const Real A = cand.parameter, h = kDerivativeStep * A;
      const Real B = amplitude_of(m, A).amplitude;
      const Real d = (amplitude_of(m, A + h).amplitude - amplitude_of(m, A - h).amplitude) / (2 * h);
      cert = std::fabs(d) * A / std::fabs(B);
    } else {
      const Real t = cand.parameter, mod = std::abs(cand.node), h = kDerivativeStep * mod;
      const auto p0 = solve_conjugate_at(m, t);
      const auto pp = solve_conjugate_at(m, t + h, p0);
      const auto pm = solve_conjugate_at(m, t - h, p0);
      if (p0 && pp && pm) cert = std::fabs((pp->B - pm->B) / (2 * h)) * mod / std::fabs(p0->B);
    }
    c.check(cert <= kStationarityTolerance, label + " (" + std::string(to_string(cand.branch)) +
                                                " branch): |dB/dA| A/|B| = " + fmt(cert) + " (<= 1e-6)");
  }
  results.push_back(c);
}

void criterion_9e() {
  Criterion c{"9e", "scale covariance of real-branch candidates"};
  for (auto id : {CaseId::partition, CaseId::anharmonic, CaseId::polymer}) {
    const auto base = scan(moments3(id));
    std::vector<Real> nodes;
    for (const auto& cand : base.candidates) {
      nodes.push_back(cand.parameter);
      if (cand.mirror) nodes.push_back(*cand.mirror);
    }
    for (Real lambda : {0.5L, 2.0L}) {
      auto a = series_coefficients(corpus_series(id, 3));
      Real p = 1;
      for (auto& v : a) {
        v *= p;
        p *= lambda;
      }
      std::vector<Real> scaled;
      try {
        const auto t = scan(log_moments(normalize_series(a, 3), 3));
        for (const auto& cand : t.candidates) {
          scaled.push_back(cand.parameter);
          if (cand.mirror) scaled.push_back(*cand.mirror);
        }
      } catch (const Error&) {
      }
      // Under x -> lambda x every node maps A -> lambda A.
      Real worst = 0;
      for (Real A : nodes) {
        Real best = std::numeric_limits<Real>::infinity();
        for (Real S : scaled) best = std::min(best, std::fabs(S - lambda * A) / (lambda * A));
        worst = std::max(worst, best);
      }
      if (nodes.size() != scaled.size()) worst = std::numeric_limits<Real>::infinity();
      c.check(worst <= 1e-8L, std::string(to_string(id)) + " lambda = " + fmt(lambda) + ": " +
                                  std::to_string(scaled.size()) + " scaled vs " + std::to_string(nodes.size()) +
                                  " base nodes, worst relative deviation from lambda*A* = " + fmt(worst) +
                                  " (<= 1e-8)");
    }
  }
  results.push_back(c);
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> all{criterion_1, criterion_2, criterion_3,  criterion_4,  criterion_5,
                                               criterion_6, criterion_7, criterion_8,  criterion_9a, criterion_9b,
                                               criterion_9c, criterion_9d, criterion_9e};
  for (const auto& run : all) {
    try {
      run();
    } catch (const std::exception& e) {
      Criterion c{"?", "unexpected exception"};
      c.check(false, e.what());
      results.push_back(c);
    }
  }
  int failed = 0;
  for (const auto& c : results) {
    std::printf("%s %-3s %s\n", c.pass ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str());
    for (const auto& l : c.lines) std::printf("         %s\n", l.c_str());
    failed += c.pass ? 0 : 1;
  }
  std::printf("%zu criteria, %zu passed, %d failed\n", results.size(), results.size() - failed, failed);
  return failed == 0 ? 0 : 1;
}
