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

#ifndef FACTORAPPROX_OPTIMIZER_HPP
#define FACTORAPPROX_OPTIMIZER_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "factorapprox/error.hpp"
#include "factorapprox/evaluate.hpp"
#include "factorapprox/factor_solver.hpp"
#include "factorapprox/scalar.hpp"
#include "factorapprox/series.hpp"

namespace factorapprox {

enum class Spacing { log, linear };
enum class Branch { real, conjugate };
enum class BranchChoice { automatic, real, conjugate };

constexpr std::string_view to_string(Spacing s) noexcept { return s == Spacing::log ? "log" : "linear"; }
constexpr std::string_view to_string(Branch b) noexcept { return b == Branch::real ? "real" : "conjugate"; }
constexpr std::string_view to_string(BranchChoice b) noexcept {
  switch (b) {
    case BranchChoice::automatic: return "auto";
    case BranchChoice::real: return "real";
    case BranchChoice::conjugate: return "conjugate";
  }
  return "auto";
}

struct Grid {
  Real min = 1e-3L;
  Real max = 1e3L;
  std::size_t points = 2000;
  Spacing spacing = Spacing::log;

  void validate() const {
    if (points < 3) fail(Errc::invalid_argument, "grid needs at least 3 points");
    if (!(min < max) || !std::isfinite(min) || !std::isfinite(max))
      fail(Errc::invalid_argument, "grid bounds must satisfy min < max");
    if (spacing == Spacing::log && !(min > 0)) fail(Errc::invalid_argument, "log grid needs min > 0");
  }

  std::vector<Real> nodes() const {
    validate();
    std::vector<Real> out(points);
    const Real last = static_cast<Real>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
      const Real u = static_cast<Real>(i) / last;
      out[i] = spacing == Spacing::log ? std::exp(std::log(min) + u * (std::log(max) - std::log(min)))
                                       : min + u * (max - min);
    }
    out.front() = min;
    out.back() = max;
    return out;
  }
};

inline Grid default_real_grid() { return {}; }
inline Grid default_conjugate_grid() { return {-20, 20, 2000, Spacing::linear}; }

/// One grid point. On the conjugate branch `A` holds the scan parameter
/// t = Re A.
struct TraceSample {
  Real A = 0;
  Real B = std::numeric_limits<Real>::quiet_NaN();
  Real beta = std::numeric_limits<Real>::quiet_NaN();
  Real dBdA = std::numeric_limits<Real>::quiet_NaN();
  bool solvable = false;
};

namespace cflag {
inline constexpr std::string_view plateau = "plateau";
inline constexpr std::string_view near_degenerate = "near-degenerate";
inline constexpr std::string_view pole_on_domain = "pole-on-domain";
}  // namespace cflag

struct Candidate {
  Complex node;      // A* on the real branch, t + i s on the conjugate branch
  Real parameter = 0;  // scan coordinate: A* or t
  Real amplitude = 0;
  Real exponent = 0;
  Real second_derivative = 0;  // |d2B/dA2|
  Real curvature = 0;          // |d2B/dA2| A^2 / |B|
  Real certificate = 0;        // |dB/dA| A / |B|
  Branch branch = Branch::real;
  std::optional<Real> mirror;  // equivalent stationary point merged into this one
  std::vector<std::string> flags;

  bool has(std::string_view f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }
};

struct OptimizationTrace {
  Branch branch = Branch::real;
  Grid grid;
  std::vector<TraceSample> samples;
  std::vector<Candidate> candidates;
  std::optional<std::size_t> selected;
};

struct OptimizeOptions {
  Grid grid = default_real_grid();
  Grid conjugate_grid = default_conjugate_grid();
  BranchChoice branch = BranchChoice::automatic;
  std::optional<std::size_t> select;
};

struct OptimizationResult {
  FactorApproximant approximant;
  OptimizationTrace trace;               // trace the selection came from
  std::vector<OptimizationTrace> traces;  // every branch that was scanned
};

/// Raised when neither branch yields a candidate; carries every trace.
class OptimizationFailed : public Error {
 public:
  OptimizationFailed(const std::string& detail, std::vector<OptimizationTrace> traces)
      : Error(Errc::optimization_failed, detail), traces_(std::move(traces)) {}
  const std::vector<OptimizationTrace>& traces() const noexcept { return traces_; }

 private:
  std::vector<OptimizationTrace> traces_;
};

/// Stationarity certificate bound: |dB/dA| A / |B|.
inline constexpr Real kStationarityTolerance = 1e-6L;
/// Relative finite-difference step for the certificate and refinement.
inline constexpr Real kDerivativeStep = 1e-5L;
/// Normalized derivatives at or below this count as exactly zero.
inline constexpr Real kPlateauTolerance = 1e-12L;
/// Relative bisection width at which refinement stops.
inline constexpr Real kRefineTolerance = 1e-10L;
/// Node separation (relative) at which refinement stops near a degenerate point.
inline constexpr Real kDegenerateSeparation = 1e-8L;

/// (B, beta) of the odd-order approximant with node A held fixed.
inline AsymptoticForm amplitude_of(const LogMoments<Real>& m, Real A) {
  return asymptote(solve_odd_fixed_node(m, A));
}

namespace detail {

struct RealPoint {
  Real B = 0;
  Real beta = 0;
  Real separation = 0;  // min |A_j - A| / A over the other active nodes
  bool pole = false;
  std::vector<Real> other_real_nodes;
};

inline std::optional<RealPoint> real_point(const LogMoments<Real>& m, Real A) {
  try {
    const auto f = solve_odd_fixed_node(m, A);
    const auto form = asymptote(f);
    if (!std::isfinite(form.amplitude) || !std::isfinite(form.exponent) || form.amplitude == 0) return std::nullopt;
    RealPoint pt{form.amplitude, form.exponent, std::numeric_limits<Real>::infinity(),
                 f.diagnostics.has(flag::pole_on_domain), {}};
    bool skipped_self = false;
    for (const auto& p : f.pairs) {
      if (!skipped_self && p.A == Complex(A)) {
        skipped_self = true;
        continue;
      }
      if (p.n == Complex(0)) continue;
      pt.separation = std::min(pt.separation, std::abs(p.A - Complex(A)) / std::fabs(A));
      if (p.pairing == Pairing::real) pt.other_real_nodes.push_back(p.A.real());
    }
    return pt;
  } catch (const Error&) {
    return std::nullopt;
  }
}

inline std::optional<Real> real_amplitude(const LogMoments<Real>& m, Real A) {
  const auto pt = real_point(m, A);
  if (!pt) return std::nullopt;
  return pt->B;
}

struct ConjugatePoint {
  Real s = 0;
  Complex n;
  Real B = 0;
  Real beta = 0;
};

}  // namespace detail

/// Solves 2 Re(n A^j) = B_j (j = 1..3) for A = t + i s by damped Newton in
/// (s, Re n, Im n). Returns nothing when Newton fails or s collapses to 0.
inline std::optional<detail::ConjugatePoint> solve_conjugate_at(const LogMoments<Real>& m, Real t,
                                                                std::optional<detail::ConjugatePoint> init = std::nullopt) {
  if (m.order() != 3) fail(Errc::invalid_argument, "the conjugate branch is defined for order 3");
  const Real b1 = m.at(1), b2 = m.at(2), b3 = m.at(3);
  const Real bscale = std::max({Real(1), std::fabs(b1), std::fabs(b2), std::fabs(b3)});

  using V3 = Eigen::Matrix<Real, 3, 1>;
  using M3 = Eigen::Matrix<Real, 3, 3>;
  auto residual = [&](const V3& u) {
    const Complex A(t, u(0));
    const Complex n(u(1), u(2));
    const Complex A2 = A * A;
    return V3(2 * (n * A).real() - b1, 2 * (n * A2).real() - b2, 2 * (n * A2 * A).real() - b3);
  };
  auto jacobian = [&](const V3& u) {
    const Complex A(t, u(0));
    const Complex n(u(1), u(2));
    const Complex I(0, 1);
    M3 J;
    Complex power(1);  // A^{j-1}
    for (int j = 1; j <= 3; ++j) {
      const Complex Aj = power * A;
      J(j - 1, 0) = 2 * (n * Real(j) * power * I).real();
      J(j - 1, 1) = 2 * Aj.real();
      J(j - 1, 2) = 2 * (I * Aj).real();
      power = Aj;
    }
    return J;
  };

  V3 u;
  if (init) {
    u << init->s, init->n.real(), init->n.imag();
  } else {
    const Real s0 = t != 0 ? std::fabs(t) : Real(1);
    // Weights from the first two equations at s0.
    const Complex A(t, s0);
    Eigen::Matrix<Real, 2, 2> L;
    L << 2 * A.real(), -2 * A.imag(), 2 * (A * A).real(), -2 * (A * A).imag();
    const Eigen::Matrix<Real, 2, 1> w = L.colPivHouseholderQr().solve(Eigen::Matrix<Real, 2, 1>(b1, b2));
    u << s0, w(0), w(1);
  }

  Real norm = residual(u).norm();
  for (int iter = 0; iter < 100 && norm > 1e-15L * bscale; ++iter) {
    const V3 F = residual(u);
    const M3 J = jacobian(u);
    const V3 step = J.fullPivLu().solve(-F);
    if (!step.allFinite()) return std::nullopt;
    Real lambda = 1;
    bool improved = false;
    for (int h = 0; h < 40; ++h) {
      const V3 trial = u + lambda * step;
      const Real tn = residual(trial).norm();
      if (std::isfinite(tn) && tn < norm) {
        u = trial;
        norm = tn;
        improved = true;
        break;
      }
      lambda /= 2;
    }
    if (!improved) break;
  }
  if (!(norm <= 1e-12L * bscale)) return std::nullopt;
  if (u(0) < 0) {  // the mirrored solution is the same conjugate couple
    u(0) = -u(0);
    u(2) = -u(2);
  }
  const Real mod = std::hypot(t, u(0));
  if (!(u(0) > 1e-9L * std::max(Real(1), mod))) return std::nullopt;

  detail::ConjugatePoint pt;
  pt.s = u(0);
  pt.n = Complex(u(1), u(2));
  const Complex A(t, pt.s);
  const Complex lb = pt.n * std::log(A);
  pt.B = std::exp(2 * lb.real());
  pt.beta = 2 * pt.n.real();
  if (!std::isfinite(pt.B)) return std::nullopt;
  return pt;
}

namespace detail {

inline Real normalized(Real dBdA, Real A, Real B) { return std::fabs(dBdA) * std::fabs(A) / std::fabs(B); }

inline void grid_derivatives(std::vector<TraceSample>& samples) {
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const auto& lo = samples[i - 1];
    const auto& hi = samples[i + 1];
    if (!samples[i].solvable || !lo.solvable || !hi.solvable) continue;
    samples[i].dBdA = (hi.B - lo.B) / (hi.A - lo.A);
  }
}

inline int derivative_sign(const TraceSample& s) {
  if (!std::isfinite(s.dBdA)) return 2;  // undefined
  const Real scale = std::max(std::fabs(s.A), Real(1e-300));
  if (normalized(s.dBdA, scale, s.B) <= kPlateauTolerance) return 0;
  return s.dBdA > 0 ? 1 : -1;
}

/// Index brackets [lo, hi] of grid samples across which dB/dA changes sign,
/// plus maximal runs of zero derivative (plateaus) of length >= 3.
struct Brackets {
  std::vector<std::pair<std::size_t, std::size_t>> sign_changes;
  std::vector<std::pair<std::size_t, std::size_t>> plateaus;
};

inline Brackets find_brackets(const std::vector<TraceSample>& samples) {
  Brackets out;
  const std::size_t n = samples.size();
  std::size_t i = 0;
  while (i < n) {
    const int si = derivative_sign(samples[i]);
    if (si == 0) {
      std::size_t j = i;
      while (j + 1 < n && derivative_sign(samples[j + 1]) == 0) ++j;
      if (j - i + 1 >= 3) out.plateaus.emplace_back(i, j);
      const int before = i > 0 ? derivative_sign(samples[i - 1]) : 2;
      const int after = j + 1 < n ? derivative_sign(samples[j + 1]) : 2;
      if (j - i + 1 < 3 && std::abs(before) == 1 && std::abs(after) == 1 && before != after)
        out.sign_changes.emplace_back(i - 1, j + 1);
      i = j + 1;
      continue;
    }
    if (std::abs(si) == 1 && i + 1 < n) {
      const int sn = derivative_sign(samples[i + 1]);
      if (std::abs(sn) == 1 && sn != si) out.sign_changes.emplace_back(i, i + 1);
    }
    ++i;
  }
  return out;
}

/// Bisection on a sign-changing derivative. `eval` returns the derivative
/// or nothing where it is undefined; `stop` may end refinement early.
template <class Deriv, class Stop>
std::optional<Real> bisect(Real lo, Real hi, Deriv&& eval, Stop&& stop) {
  auto flo = eval(lo);
  auto fhi = eval(hi);
  if (!flo || !fhi || !(*flo * *fhi < 0)) return std::nullopt;
  for (int iter = 0; iter < 200; ++iter) {
    const Real mid = (lo + hi) / 2;
    if (hi - lo <= kRefineTolerance * std::max(std::fabs(mid), Real(1e-300))) break;
    if (stop(mid)) return mid;
    const auto fm = eval(mid);
    if (!fm) return std::nullopt;
    if (*fm == 0) return mid;
    if ((*fm > 0) == (*flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

inline std::optional<Real> real_derivative(const LogMoments<Real>& m, Real A) {
  const Real h = kDerivativeStep * A;
  const auto bp = real_amplitude(m, A + h);
  const auto bm = real_amplitude(m, A - h);
  if (!bp || !bm) return std::nullopt;
  return (*bp - *bm) / (2 * h);
}

inline std::optional<Real> real_second_derivative(const LogMoments<Real>& m, Real A, Real B) {
  const Real h = 1e-4L * A;
  const auto bp = real_amplitude(m, A + h);
  const auto bm = real_amplitude(m, A - h);
  if (!bp || !bm) return std::nullopt;
  return std::fabs((*bp - 2 * B + *bm) / (h * h));
}

inline bool same_node(Real a, Real b) { return std::fabs(a - b) <= 1e-6L * std::max(std::fabs(a), std::fabs(b)); }

// Every solution of the fixed-node problem is reached from each of its real
// nodes, so each stationary point appears once per node. Keep the member
// with the flattest curvature and record the other as its mirror.
inline std::vector<Candidate> merge_mirrors(std::vector<Candidate> cands,
                                            const std::vector<std::vector<Real>>& others) {
  std::vector<bool> dropped(cands.size(), false);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (dropped[i]) continue;
    for (std::size_t j = i + 1; j < cands.size(); ++j) {
      if (dropped[j]) continue;
      const bool j_in_i = std::any_of(others[i].begin(), others[i].end(),
                                      [&](Real a) { return same_node(a, cands[j].parameter); });
      const bool i_in_j = std::any_of(others[j].begin(), others[j].end(),
                                      [&](Real a) { return same_node(a, cands[i].parameter); });
      if (!j_in_i || !i_in_j) continue;
      const std::size_t keep = cands[j].curvature < cands[i].curvature ? j : i;
      const std::size_t drop = keep == i ? j : i;
      cands[keep].mirror = cands[drop].parameter;
      dropped[drop] = true;
      if (drop == i) break;
    }
  }
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (!dropped[i]) out.push_back(std::move(cands[i]));
  return out;
}

inline void rank(std::vector<Candidate>& cands) {
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    const bool pa = a.has(cflag::pole_on_domain);
    const bool pb = b.has(cflag::pole_on_domain);
    if (pa != pb) return !pa;
    return a.curvature < b.curvature;
  });
}

template <class Refine>
std::optional<Real> refine_bracket(const std::vector<TraceSample>& s, std::size_t i, std::size_t j, Refine&& refine) {
  // Grid derivatives at i and j are centred differences spanning
  // [i - 1, j + 1]; try that span first, then narrower ones.
  const std::size_t n = s.size();
  const std::size_t lo_wide = i > 0 ? i - 1 : i;
  const std::size_t hi_wide = j + 1 < n ? j + 1 : j;
  const std::pair<std::size_t, std::size_t> spans[] = {{lo_wide, hi_wide}, {i, j}, {lo_wide, j}, {i, hi_wide}};
  for (const auto& [a, b] : spans) {
    if (auto r = refine(s[a].A, s[b].A)) return r;
  }
  return std::nullopt;
}

}  // namespace detail

/// Samples B(A), beta(A) over the grid on the real branch and locates the
/// stationary points of B.
inline OptimizationTrace scan(const LogMoments<Real>& m, const Grid& grid = default_real_grid()) {
  const std::size_t k = m.order();
  if (k < 3 || k % 2 != 1) fail(Errc::invalid_argument, "scan needs an odd order >= 3");
  if (!(grid.min > 0)) fail(Errc::invalid_argument, "real-branch grid needs A_min > 0");
  OptimizationTrace trace;
  trace.branch = Branch::real;
  trace.grid = grid;
  const auto nodes = grid.nodes();
  trace.samples.resize(nodes.size());
  bool any = false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto& s = trace.samples[i];
    s.A = nodes[i];
    if (const auto pt = detail::real_point(m, nodes[i])) {
      s.B = pt->B;
      s.beta = pt->beta;
      s.solvable = true;
      any = true;
    }
  }
  if (!any) fail(Errc::empty_scan, "no solvable point on the real-branch grid");
  detail::grid_derivatives(trace.samples);

  const auto brackets = detail::find_brackets(trace.samples);
  std::vector<Candidate> cands;
  std::vector<std::vector<Real>> others;
  auto deriv = [&](Real A) { return detail::real_derivative(m, A); };

  for (const auto& [i, j] : brackets.sign_changes) {
    bool degenerate = false;
    auto stop = [&](Real A) {
      const auto pt = detail::real_point(m, A);
      if (pt && pt->separation < kDegenerateSeparation) {
        degenerate = true;
        return true;
      }
      return false;
    };
    const auto root = detail::refine_bracket(trace.samples, i, j, [&](Real lo, Real hi) {
      degenerate = false;
      return detail::bisect(lo, hi, deriv, stop);
    });
    if (!root) continue;
    const Real A = *root;
    const auto pt = detail::real_point(m, A);
    const auto d = deriv(A);
    if (!pt || !d) continue;
    const Real cert = detail::normalized(*d, A, pt->B);
    if (!(cert <= kStationarityTolerance)) continue;  // discontinuity, not a stationary point
    Candidate c;
    c.node = Complex(A);
    c.parameter = A;
    c.amplitude = pt->B;
    c.exponent = pt->beta;
    c.certificate = cert;
    c.branch = Branch::real;
    const auto d2 = detail::real_second_derivative(m, A, pt->B);
    c.second_derivative = d2 ? *d2 : std::numeric_limits<Real>::infinity();
    c.curvature = c.second_derivative * A * A / std::fabs(pt->B);
    if (degenerate || pt->separation < 1e-6L) c.flags.emplace_back(cflag::near_degenerate);
    if (pt->pole) c.flags.emplace_back(cflag::pole_on_domain);
    cands.push_back(std::move(c));
    others.push_back(pt->other_real_nodes);
  }

  for (const auto& [i, j] : brackets.plateaus) {
    const std::size_t mid = (i + j) / 2;
    const Real A = trace.samples[mid].A;
    const auto pt = detail::real_point(m, A);
    if (!pt) continue;
    Candidate c;
    c.node = Complex(A);
    c.parameter = A;
    c.amplitude = pt->B;
    c.exponent = pt->beta;
    const auto d = deriv(A);
    c.certificate = d ? detail::normalized(*d, A, pt->B) : 0;
    c.branch = Branch::real;
    c.flags.emplace_back(cflag::plateau);
    if (pt->pole) c.flags.emplace_back(cflag::pole_on_domain);
    cands.push_back(std::move(c));
    others.push_back(pt->other_real_nodes);
  }

  trace.candidates = detail::merge_mirrors(std::move(cands), others);
  detail::rank(trace.candidates);
  if (!trace.candidates.empty()) trace.selected = 0;
  return trace;
}

/// Conjugate-pair branch at order 3: A = t + i s, A_2 = conj(A), n_2 = conj(n).
inline OptimizationTrace conjugate_branch(const LogMoments<Real>& m, const Grid& grid = default_conjugate_grid()) {
  if (m.order() != 3) fail(Errc::invalid_argument, "the conjugate branch is defined for order 3");
  OptimizationTrace trace;
  trace.branch = Branch::conjugate;
  trace.grid = grid;
  const auto ts = grid.nodes();
  trace.samples.resize(ts.size());
  std::vector<std::optional<detail::ConjugatePoint>> sols(ts.size());
  std::optional<detail::ConjugatePoint> prev;
  bool any = false;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    auto& s = trace.samples[i];
    s.A = ts[i];
    auto pt = prev ? solve_conjugate_at(m, ts[i], prev) : std::nullopt;
    if (!pt) pt = solve_conjugate_at(m, ts[i]);
    sols[i] = pt;
    prev = pt;
    if (pt) {
      s.B = pt->B;
      s.beta = pt->beta;
      s.solvable = true;
      any = true;
    }
  }
  if (!any) fail(Errc::empty_scan, "no solvable point on the conjugate-branch grid");
  detail::grid_derivatives(trace.samples);

  auto nearest = [&](Real t) {
    std::size_t best = 0;
    Real dist = std::numeric_limits<Real>::infinity();
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (sols[i] && std::fabs(ts[i] - t) < dist) {
        dist = std::fabs(ts[i] - t);
        best = i;
      }
    return sols[best];
  };
  auto point = [&](Real t) { return solve_conjugate_at(m, t, nearest(t)); };
  auto amplitude = [&](Real t) -> std::optional<Real> {
    const auto p = point(t);
    if (!p) return std::nullopt;
    return p->B;
  };
  auto step_of = [&](Real t) {
    const auto p = point(t);
    const Real mod = p ? std::hypot(t, p->s) : std::max(std::fabs(t), Real(1));
    return kDerivativeStep * mod;
  };
  auto deriv = [&](Real t) -> std::optional<Real> {
    const Real h = step_of(t);
    const auto bp = amplitude(t + h);
    const auto bm = amplitude(t - h);
    if (!bp || !bm) return std::nullopt;
    return (*bp - *bm) / (2 * h);
  };

  const auto brackets = detail::find_brackets(trace.samples);
  std::vector<Candidate> cands;
  for (const auto& [i, j] : brackets.sign_changes) {
    const auto root = detail::refine_bracket(trace.samples, i, j, [&](Real lo, Real hi) {
      return detail::bisect(lo, hi, deriv, [](Real) { return false; });
    });
    if (!root) continue;
    const Real t = *root;
    const auto p = point(t);
    const auto d = deriv(t);
    if (!p || !d) continue;
    const Real mod = std::hypot(t, p->s);
    const Real cert = detail::normalized(*d, mod, p->B);
    if (!(cert <= kStationarityTolerance)) continue;
    Candidate c;
    c.node = Complex(t, p->s);
    c.parameter = t;
    c.amplitude = p->B;
    c.exponent = p->beta;
    c.certificate = cert;
    c.branch = Branch::conjugate;
    const Real h = 1e-4L * mod;
    const auto bp = amplitude(t + h);
    const auto bm = amplitude(t - h);
    c.second_derivative =
        bp && bm ? std::fabs((*bp - 2 * p->B + *bm) / (h * h)) : std::numeric_limits<Real>::infinity();
    c.curvature = c.second_derivative * mod * mod / std::fabs(p->B);
    cands.push_back(std::move(c));
  }
  detail::rank(cands);
  trace.candidates = std::move(cands);
  if (!trace.candidates.empty()) trace.selected = 0;
  return trace;
}

/// Conjugate-couple approximant at scan parameter t.
inline FactorApproximant conjugate_approximant(const LogMoments<Real>& m, Real t) {
  const auto p = solve_conjugate_at(m, t);
  if (!p) fail(Errc::no_admissible_solution, "no conjugate solution at t = " + format_real(t));
  FactorApproximant f;
  f.order = m.order();
  const Complex A(t, p->s);
  f.pairs = {{A, p->n, Pairing::conjugate_lead}, {std::conj(A), std::conj(p->n), Pairing::conjugate_follow}};
  f.diagnostics.moment_residual = moment_residual(f.pairs, m);
  if (f.diagnostics.moment_residual > kMomentTolerance) f.diagnostics.set(flag::residual_above_tolerance);
  return f;
}

/// Chooses the free node of an odd-order approximant by dB/dA = 0.
inline OptimizationResult optimize_odd(const LogMoments<Real>& m, const OptimizeOptions& options = {}) {
  const std::size_t k = m.order();
  if (k < 3 || k % 2 != 1) fail(Errc::invalid_argument, "optimize_odd needs an odd order >= 3");
  OptimizationResult result;
  std::string why;

  auto attempt = [&](Branch b) -> bool {
    try {
      auto trace = b == Branch::real ? scan(m, options.grid) : conjugate_branch(m, options.conjugate_grid);
      result.traces.push_back(trace);
      if (trace.candidates.empty()) {
        why += std::string(to_string(b)) + " branch: no stationary point; ";
        return false;
      }
      if (options.select) {
        if (*options.select >= trace.candidates.size())
          fail(Errc::invalid_argument, "candidate index " + std::to_string(*options.select) + " out of range (" +
                                           std::to_string(trace.candidates.size()) + " candidates)");
        trace.selected = *options.select;
      }
      result.traces.back() = trace;
      result.trace = std::move(trace);
      return true;
    } catch (const Error& e) {
      if (e.code() != Errc::empty_scan) throw;
      OptimizationTrace empty;
      empty.branch = b;
      empty.grid = b == Branch::real ? options.grid : options.conjugate_grid;
      result.traces.push_back(std::move(empty));
      why += std::string(to_string(b)) + " branch: " + e.what() + "; ";
      return false;
    }
  };

  bool found = false;
  switch (options.branch) {
    case BranchChoice::real: found = attempt(Branch::real); break;
    case BranchChoice::conjugate:
      if (k != 3) fail(Errc::invalid_argument, "the conjugate branch is defined for order 3");
      found = attempt(Branch::conjugate);
      break;
    case BranchChoice::automatic:
      found = attempt(Branch::real);
      if (!found && k == 3) found = attempt(Branch::conjugate);
      break;
  }
  if (!found) throw OptimizationFailed(why.empty() ? "no candidate" : why.substr(0, why.size() - 2), result.traces);

  const auto& c = result.trace.candidates[*result.trace.selected];
  if (c.branch == Branch::real) {
    result.approximant = solve_odd_fixed_node(m, c.parameter);
  } else {
    result.approximant = conjugate_approximant(m, c.parameter);
  }
  auto& prov = result.approximant.provenance;
  prov.kind = ProvenanceKind::odd_optimized;
  prov.free_node = c.node;
  prov.branch = std::string(to_string(c.branch));
  prov.candidate = *result.trace.selected;
  if (c.has(cflag::near_degenerate)) result.approximant.diagnostics.set(flag::near_degenerate);
  return result;
}

}  // namespace factorapprox

#endif
