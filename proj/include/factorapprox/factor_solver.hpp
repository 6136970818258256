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

#ifndef FACTORAPPROX_FACTOR_SOLVER_HPP
#define FACTORAPPROX_FACTOR_SOLVER_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "factorapprox/error.hpp"
#include "factorapprox/polynomial.hpp"
#include "factorapprox/scalar.hpp"
#include "factorapprox/series.hpp"

namespace factorapprox {

enum class Pairing { real, conjugate_lead, conjugate_follow };

constexpr std::string_view to_string(Pairing p) noexcept {
  switch (p) {
    case Pairing::real: return "real";
    case Pairing::conjugate_lead: return "conjugate-lead";
    case Pairing::conjugate_follow: return "conjugate-follow";
  }
  return "real";
}

/// One factor (1 + A x)^n.
struct FactorPair {
  Complex A;
  Complex n;
  Pairing pairing = Pairing::real;
};

enum class ProvenanceKind { even_exact, odd_fixed_node, odd_optimized };

constexpr std::string_view to_string(ProvenanceKind k) noexcept {
  switch (k) {
    case ProvenanceKind::even_exact: return "even-exact";
    case ProvenanceKind::odd_fixed_node: return "odd-fixed-node";
    case ProvenanceKind::odd_optimized: return "odd-optimized";
  }
  return "even-exact";
}

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::even_exact;
  Complex free_node{};  // fixed or optimized node; unused for even-exact
  std::string branch;   // "real" | "conjugate" for odd-optimized
  std::optional<std::size_t> candidate;
};

namespace flag {
inline constexpr std::string_view pole_on_domain = "pole-on-domain";
inline constexpr std::string_view ill_conditioned = "ill-conditioned";
inline constexpr std::string_view reduced_order = "reduced-order";
inline constexpr std::string_view near_degenerate = "near-degenerate";
inline constexpr std::string_view conjugate_repaired = "conjugate-repaired";
inline constexpr std::string_view residual_above_tolerance = "residual-above-tolerance";
}  // namespace flag

struct Diagnostics {
  Real hankel_condition = 1;
  Real vandermonde_condition = 1;
  Real moment_residual = 0;
  std::vector<std::string> flags;

  bool has(std::string_view f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }
  void set(std::string_view f) {
    if (!has(f)) flags.emplace_back(f);
  }
};

struct FactorApproximant {
  std::size_t order = 0;
  std::vector<FactorPair> pairs;
  std::string prefactor_tag = "unit";
  Real prefactor_multiplier = 1;
  Provenance provenance;
  Diagnostics diagnostics;
};

constexpr std::size_t factor_count(std::size_t k) noexcept { return k % 2 == 0 ? k / 2 : (k + 1) / 2; }

/// Relative moment tolerance every solver output is held to.
inline constexpr Real kMomentTolerance = 1e-9L;
/// Condition number above which a solve is flagged, not rejected.
inline constexpr Real kConditionWarning = 1e12L;
/// Reciprocal condition number below which a linear system is singular.
inline constexpr Real kSingularFloor = 1e-16L;

namespace detail {

using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

struct LinearSolution {
  CVector x;
  Real condition = 1;
  bool singular = false;
};

// LU solve after row equilibration.
inline LinearSolution solve_equilibrated(CMatrix m, CVector rhs) {
  LinearSolution out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const Real s = m.row(i).cwiseAbs().maxCoeff();
    if (s == 0) {
      out.singular = true;
      out.condition = std::numeric_limits<Real>::infinity();
      out.x = CVector::Zero(m.cols());
      return out;
    }
    m.row(i) /= s;
    rhs(i) /= s;
  }
  // rcond() is the LAPACK-style reciprocal 1-norm condition estimate; it
  // does not see exact rank loss, which the pivots report.
  const Eigen::FullPivLU<CMatrix> lu(m);
  const Real rcond = lu.isInvertible() ? lu.rcond() : Real(0);
  out.condition = rcond > 0 ? 1 / rcond : std::numeric_limits<Real>::infinity();
  out.singular = !(rcond > kSingularFloor);
  out.x = lu.solve(rhs);
  return out;
}

}  // namespace detail

/// max_n |sum_i n_i A_i^n - B_n| / max(1, |B_n|) over all moments.
inline Real moment_residual(std::span<const FactorPair> pairs, const LogMoments<Real>& m) {
  Real worst = 0;
  std::vector<Complex> powers(pairs.size(), Complex(1));
  for (std::size_t n = 1; n <= m.order(); ++n) {
    ComplexCompensatedSum acc;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      powers[i] *= pairs[i].A;
      acc.add(pairs[i].n * powers[i]);
    }
    const Real b = m.at(n);
    worst = std::max(worst, std::abs(acc.value() - Complex(b)) / std::max(Real(1), std::fabs(b)));
  }
  return worst;
}

/// Coefficients q_0..q_{p-1} of the node polynomial. Without a fixed root
/// the p Hankel rows B_{s+p} + sum_j q_j B_{s+j} = 0 (s = 1..p) determine it;
/// with a fixed root the last Hankel row is replaced by P(fixed_root) = 0.
inline MonicPolynomial node_polynomial(const LogMoments<Real>& m, std::size_t p,
                                       std::optional<Complex> fixed_root = std::nullopt,
                                       Diagnostics* diag = nullptr) {
  if (p == 0) fail(Errc::invalid_argument, "factor count must be positive");
  const std::size_t need = fixed_root ? 2 * p - 1 : 2 * p;
  if (m.order() != need)
    fail(Errc::invalid_argument, "node_polynomial with p = " + std::to_string(p) + " needs " +
                                     std::to_string(need) + " moments, got " + std::to_string(m.order()));
  for (const auto& b : m.values)
    if (!std::isfinite(b)) fail(Errc::invalid_argument, "non-finite moment");

  const auto n = static_cast<Eigen::Index>(p);
  detail::CMatrix mat(n, n);
  detail::CVector rhs(n);
  const std::size_t hankel_rows = fixed_root ? p - 1 : p;
  for (std::size_t s = 1; s <= hankel_rows; ++s) {
    for (std::size_t j = 0; j < p; ++j)
      mat(static_cast<Eigen::Index>(s - 1), static_cast<Eigen::Index>(j)) = m.at(s + j);
    rhs(static_cast<Eigen::Index>(s - 1)) = -m.at(s + p);
  }
  if (fixed_root) {
    Complex power(1);
    for (std::size_t j = 0; j < p; ++j) {
      mat(n - 1, static_cast<Eigen::Index>(j)) = power;
      power *= *fixed_root;
    }
    rhs(n - 1) = -power;
  }

  const auto sol = detail::solve_equilibrated(mat, rhs);
  if (diag) diag->hankel_condition = sol.condition;
  if (sol.singular) {
    if (fixed_root)
      fail(Errc::no_admissible_solution, "node system is singular at the fixed node");
    fail(Errc::degenerate_moments, "Hankel system is singular");
  }
  if (diag && sol.condition > kConditionWarning) diag->set(flag::ill_conditioned);

  const bool real_input = !fixed_root || fixed_root->imag() == 0;
  MonicPolynomial poly;
  for (Eigen::Index j = 0; j < n; ++j) {
    Complex q = sol.x(j);
    if (real_input) q.imag(0);
    poly.lower.push_back(q);
  }
  return poly;
}

/// Solves sum_i n_i A_i^s = B_s for s = 1..p.
inline std::vector<Complex> weights_from_nodes(std::span<const Complex> nodes, const LogMoments<Real>& m,
                                               Diagnostics* diag = nullptr) {
  const std::size_t p = nodes.size();
  if (p == 0) fail(Errc::invalid_argument, "no nodes");
  if (m.order() < p)
    fail(Errc::invalid_argument, std::to_string(p) + " nodes need at least as many moments");
  Real scale = 0;
  for (const auto& a : nodes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) fail(Errc::degenerate_nodes, "non-finite node");
    scale = std::max(scale, std::abs(a));
  }
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (std::size_t i = 0; i < p; ++i) {
    if (std::abs(nodes[i]) <= 1e-14L * std::max(Real(1), scale))
      fail(Errc::degenerate_nodes, "zero node makes the weights unbounded");
    for (std::size_t j = i + 1; j < p; ++j)
      if (std::abs(nodes[i] - nodes[j]) <= 8 * eps * std::max(std::abs(nodes[i]), std::abs(nodes[j])))
        fail(Errc::degenerate_nodes, "coincident nodes make the weights unbounded");
  }

  const auto n = static_cast<Eigen::Index>(p);
  detail::CMatrix v(n, n);
  detail::CVector rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex power(1);
    for (Eigen::Index s = 0; s < n; ++s) {
      power *= nodes[static_cast<std::size_t>(i)];
      v(s, i) = power;
    }
  }
  for (Eigen::Index s = 0; s < n; ++s) rhs(s) = m.at(static_cast<std::size_t>(s) + 1);
  const auto sol = detail::solve_equilibrated(v, rhs);
  if (diag) diag->vandermonde_condition = sol.condition;
  if (sol.singular) fail(Errc::degenerate_nodes, "Vandermonde system is singular");
  if (diag && sol.condition > kConditionWarning) diag->set(flag::ill_conditioned);

  std::vector<Complex> w(p);
  for (std::size_t i = 0; i < p; ++i) w[i] = sol.x(static_cast<Eigen::Index>(i));
  if (diag) {
    std::vector<FactorPair> pairs;
    for (std::size_t i = 0; i < p; ++i) pairs.push_back({nodes[i], w[i], Pairing::real});
    diag->moment_residual = moment_residual(pairs, m);
  }
  return w;
}

namespace detail {

/// Orders the pairs, marks conjugate couples and makes them exactly
/// conjugate. Weights of a couple must agree to 1e-6 before averaging.
inline std::vector<FactorPair> pair_up(std::vector<Complex> nodes, std::vector<Complex> weights, Diagnostics& diag) {
  std::vector<FactorPair> pairs;
  for (std::size_t i = 0; i < nodes.size(); ++i) pairs.push_back({nodes[i], weights[i], Pairing::real});
  std::stable_sort(pairs.begin(), pairs.end(), [](const FactorPair& a, const FactorPair& b) { return node_order(a.A, b.A); });

  std::vector<bool> used(pairs.size(), false);
  std::vector<FactorPair> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    auto p = pairs[i];
    const Real mag = std::max(Real(1), std::abs(p.A));
    if (std::fabs(p.A.imag()) <= 1e-14L * mag) {
      const Real wmag = std::max(Real(1), std::abs(p.n));
      if (std::fabs(p.n.imag()) > 1e-6L * wmag)
        fail(Errc::asymmetric_roots, "real node carries a complex weight");
      p.A.imag(0);
      p.n.imag(0);
      p.pairing = Pairing::real;
      out.push_back(p);
      continue;
    }
    // Partner: the unused node closest to conj(A).
    std::size_t best = pairs.size();
    Real best_dist = std::numeric_limits<Real>::infinity();
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (used[j]) continue;
      const Real d = std::abs(pairs[j].A - std::conj(p.A));
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best == pairs.size() || best_dist > 1e-6L * mag)
      fail(Errc::asymmetric_roots, "complex node without a conjugate partner");
    used[best] = true;
    auto q = pairs[best];
    const Real wmag = std::max(Real(1), std::abs(p.n));
    const Real wdiff = std::abs(q.n - std::conj(p.n));
    if (wdiff > 1e-6L * wmag) fail(Errc::asymmetric_roots, "conjugate nodes carry non-conjugate weights");
    if (best_dist > 1e-14L * mag || wdiff > 1e-14L * wmag) diag.set(flag::conjugate_repaired);
    FactorPair lead{(p.A + std::conj(q.A)) / Real(2), (p.n + std::conj(q.n)) / Real(2), Pairing::conjugate_lead};
    if (lead.A.imag() < 0) {
      lead.A = std::conj(lead.A);
      lead.n = std::conj(lead.n);
    }
    out.push_back(lead);
    out.push_back({std::conj(lead.A), std::conj(lead.n), Pairing::conjugate_follow});
  }
  return out;
}

inline void finish(FactorApproximant& f, const LogMoments<Real>& m) {
  f.diagnostics.moment_residual = moment_residual(f.pairs, m);
  if (f.diagnostics.moment_residual > kMomentTolerance) f.diagnostics.set(flag::residual_above_tolerance);
  for (const auto& p : f.pairs)
    if (p.pairing == Pairing::real && p.A.real() < 0 && p.n != Complex(0)) f.diagnostics.set(flag::pole_on_domain);
  const Real scale = [&] {
    Real s = 0;
    for (const auto& p : f.pairs) s = std::max(s, std::abs(p.A));
    return s;
  }();
  for (std::size_t i = 0; i < f.pairs.size(); ++i)
    for (std::size_t j = i + 1; j < f.pairs.size(); ++j)
      if (f.pairs[i].n != Complex(0) && f.pairs[j].n != Complex(0) &&
          std::abs(f.pairs[i].A - f.pairs[j].A) < 1e-6L * scale)
        f.diagnostics.set(flag::near_degenerate);
}

inline LogMoments<Real> leading(const LogMoments<Real>& m, std::size_t count) {
  LogMoments<Real> out;
  out.values.assign(m.values.begin(), m.values.begin() + static_cast<std::ptrdiff_t>(count));
  return out;
}

inline bool is_degeneracy(Errc c) {
  return c == Errc::degenerate_moments || c == Errc::degenerate_nodes || c == Errc::no_admissible_solution;
}

// A singular system can still be consistent with fewer factors (e.g. the
// moments of 1 + x asked for two factors). Try p - 1 down to 1 and accept
// the first reduction that reproduces every moment; pad with zero weights.
inline std::optional<FactorApproximant> reduced(const LogMoments<Real>& m, std::size_t p,
                                                std::optional<Real> fixed_node) {
  for (std::size_t q = p - 1; q >= 1; --q) {
    try {
      Diagnostics diag;
      std::vector<Complex> nodes;
      if (fixed_node) {
        const auto poly = node_polynomial(leading(m, 2 * q - 1), q, Complex(*fixed_node), &diag);
        nodes.push_back(Complex(*fixed_node));
        for (const auto& r : polynomial_roots(deflate(poly, Complex(*fixed_node)))) nodes.push_back(r);
      } else {
        nodes = polynomial_roots(node_polynomial(leading(m, 2 * q), q, std::nullopt, &diag));
      }
      auto weights = weights_from_nodes(nodes, m, &diag);
      FactorApproximant f;
      f.order = m.order();
      f.diagnostics = diag;
      f.pairs = pair_up(nodes, weights, f.diagnostics);
      if (moment_residual(f.pairs, m) > kMomentTolerance) continue;
      const Complex pad = fixed_node ? Complex(*fixed_node) : f.pairs.back().A;
      while (f.pairs.size() < p) f.pairs.push_back({pad, Complex(0), Pairing::real});
      f.diagnostics.set(flag::reduced_order);
      return f;
    } catch (const Error& e) {
      if (!is_degeneracy(e.code())) throw;
    }
    if (q == 1) break;
  }
  return std::nullopt;
}

}  // namespace detail

/// Even order: all k moment equations fix k/2 nodes and k/2 weights.
inline FactorApproximant solve_even(const LogMoments<Real>& m) {
  const std::size_t k = m.order();
  if (k < 2 || k % 2 != 0) fail(Errc::invalid_argument, "solve_even needs an even order >= 2, got " + std::to_string(k));
  const std::size_t p = k / 2;
  FactorApproximant f;
  f.order = k;
  f.provenance.kind = ProvenanceKind::even_exact;
  try {
    const auto poly = node_polynomial(m, p, std::nullopt, &f.diagnostics);
    const auto nodes = polynomial_roots(poly);
    const auto weights = weights_from_nodes(nodes, m, &f.diagnostics);
    f.pairs = detail::pair_up(nodes, weights, f.diagnostics);
  } catch (const Error& e) {
    if (!detail::is_degeneracy(e.code()) || p == 1) throw;
    auto r = detail::reduced(m, p, std::nullopt);
    if (!r) throw;
    r->provenance = f.provenance;
    f = std::move(*r);
  }
  detail::finish(f, m);
  return f;
}

/// Odd order with node A held fixed; its weight and the remaining
/// (k - 1) / 2 factors follow from the k moment equations.
inline FactorApproximant solve_odd_fixed_node(const LogMoments<Real>& m, Real A) {
  const std::size_t k = m.order();
  if (k < 3 || k % 2 != 1) fail(Errc::invalid_argument, "solve_odd_fixed_node needs an odd order >= 3, got " + std::to_string(k));
  if (A == 0 || !std::isfinite(A)) fail(Errc::invalid_argument, "fixed node must be finite and nonzero");
  const std::size_t p = (k + 1) / 2;
  FactorApproximant f;
  f.order = k;
  f.provenance.kind = ProvenanceKind::odd_fixed_node;
  f.provenance.free_node = Complex(A);
  try {
    const auto poly = node_polynomial(m, p, Complex(A), &f.diagnostics);
    std::vector<Complex> nodes{Complex(A)};
    for (const auto& r : polynomial_roots(deflate(poly, Complex(A)))) nodes.push_back(r);
    const auto weights = weights_from_nodes(nodes, m, &f.diagnostics);
    f.pairs = detail::pair_up(nodes, weights, f.diagnostics);
  } catch (const Error& e) {
    if (!detail::is_degeneracy(e.code())) throw;
    auto r = detail::reduced(m, p, A);
    if (!r) fail(Errc::no_admissible_solution, std::string("no solution with fixed node A = ") + format_real(A) +
                                                   " (" + e.what() + ")");
    r->provenance = f.provenance;
    f = std::move(*r);
  }
  detail::finish(f, m);
  return f;
}

}  // namespace factorapprox

#endif
