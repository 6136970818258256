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

#ifndef FACTORAPPROX_TESTS_ORACLES_HPP
#define FACTORAPPROX_TESTS_ORACLES_HPP

// Reference implementations that share no code path with the library, and
// frozen values computed with 30-digit arithmetic.

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "factorapprox/scalar.hpp"

namespace oracle {

using factorapprox::Complex;
using factorapprox::Rational;
using factorapprox::Real;

// Frozen reference values (mpmath, 30 digits).
inline constexpr Real kDebyeHuckel10 = 0.18000090799859524969703071183L;
inline constexpr Real kStatIntegral1At10 = 0.201464254470845163477241961994L;
inline constexpr Real kStatIntegral2At5 = 2.50107536684499425229313401697L;
inline constexpr Real kLog100 = 0.0461512051684125945088419826691L;
inline constexpr Real kFactorial100 = 4.19548083237842451517980247668L;
inline constexpr Real kFactorialHalf = 1.04220712081667305760532597694L;
inline constexpr Real kPartition1 = 0.772052177852982266452094734143L;
inline constexpr Real kPartition10 = 0.520160763704750241460220070611L;
inline constexpr Real kPartition1e8 = 0.0102273110502463073260813611543L;
inline constexpr Real kPolymer10 = 3.503349303321732L;

/// Truncated product of two power series.
template <class T>
std::vector<T> multiply(const std::vector<T>& p, const std::vector<T>& q, std::size_t k) {
  std::vector<T> r(k + 1, T(0));
  for (std::size_t i = 0; i < p.size() && i <= k; ++i)
    for (std::size_t j = 0; j < q.size() && i + j <= k; ++j) r[i + j] += p[i] * q[j];
  return r;
}

/// c_1..c_k of ln(1 + S) by summing (-1)^{j+1} S^j / j.
inline std::vector<Rational> log_series(const std::vector<Rational>& a, std::size_t k) {
  std::vector<Rational> s(k + 1, Rational(0));
  for (std::size_t i = 1; i <= k && i < a.size(); ++i) s[i] = a[i];
  std::vector<Rational> power = s;
  std::vector<Rational> out(k + 1, Rational(0));
  for (std::size_t j = 1; j <= k; ++j) {
    const Rational w = (j % 2 == 1 ? Rational(1) : Rational(-1)) / Rational(static_cast<long>(j));
    for (std::size_t i = 0; i <= k; ++i) out[i] += w * power[i];
    power = multiply(power, s, k);
  }
  return {out.begin() + 1, out.end()};
}

/// B_n = sum_i n_i A_i^n.
inline std::vector<Complex> forward_moments(const std::vector<std::pair<Complex, Complex>>& pairs, std::size_t k) {
  std::vector<Complex> b(k, Complex(0));
  for (const auto& [A, n] : pairs) {
    Complex p = 1;
    for (std::size_t i = 0; i < k; ++i) {
      p *= A;
      b[i] += n * p;
    }
  }
  return b;
}

/// Taylor coefficients a_0..a_k of prod_i (1 + A_i x)^{n_i}, by generalized
/// binomial series and convolution.
inline std::vector<Complex> binomial_product(const std::vector<std::pair<Complex, Complex>>& pairs, std::size_t k) {
  std::vector<Complex> out(k + 1, Complex(0));
  out[0] = 1;
  for (const auto& [A, n] : pairs) {
    std::vector<Complex> f(k + 1);
    f[0] = 1;
    for (std::size_t j = 1; j <= k; ++j) f[j] = f[j - 1] * (n - Real(j - 1)) / Real(j) * A;
    out = multiply(out, f, k);
  }
  return out;
}

inline Complex direct_product(const std::vector<std::pair<Complex, Complex>>& pairs, Real x) {
  Complex v = 1;
  for (const auto& [A, n] : pairs) v *= std::pow(Complex(1) + A * x, n);
  return v;
}

/// k = 3 fixed-node solution by Cramer's rule:
///   q1 = (A^2 B1 - B3) / (B2 - A B1), A2 = -q1 - A.
struct TwoNode {
  Real A1 = 0, A2 = 0, n1 = 0, n2 = 0;
};

inline std::optional<TwoNode> fixed_node_k3(const std::vector<Real>& B, Real A) {
  const Real den = B[1] - A * B[0];
  if (den == 0) return std::nullopt;
  const Real q1 = (A * A * B[0] - B[2]) / den;
  const Real A2 = -q1 - A;
  const Real det = A * A2 * (A2 - A);
  if (det == 0) return std::nullopt;
  return TwoNode{A, A2, (B[0] * A2 * A2 - B[1] * A2) / det, (A * B[1] - A * A * B[0]) / det};
}

/// Large-x amplitude A^{n1} A2^{n2} when both nodes are positive.
inline std::optional<Real> amplitude_k3(const std::vector<Real>& B, Real A) {
  const auto s = fixed_node_k3(B, A);
  if (!s || !(s->A2 > 0) || !(A > 0)) return std::nullopt;
  return std::exp(s->n1 * std::log(A) + s->n2 * std::log(s->A2));
}

inline std::optional<Real> amplitude_slope(const std::vector<Real>& B, Real A) {
  const Real h = 1e-5L * A;
  const auto p = amplitude_k3(B, A + h);
  const auto m = amplitude_k3(B, A - h);
  if (!p || !m) return std::nullopt;
  return (*p - *m) / (2 * h);
}

/// Stationary points of the k = 3 amplitude on a log grid over
/// [1e-3, 1e3], refined by TOMS 748 and kept if |dB/dA| A / |B| <= 1e-6.
inline std::vector<Real> stationary_points_k3(const std::vector<Real>& B, std::size_t points = 4000) {
  std::vector<Real> roots;
  std::optional<Real> prev_slope;
  Real prev_A = 0;
  for (std::size_t i = 0; i < points; ++i) {
    const Real A = std::exp(std::log(1e-3L) + std::log(1e6L) * Real(i) / Real(points - 1));
    const auto slope = amplitude_slope(B, A);
    if (slope && prev_slope && ((*slope > 0) != (*prev_slope > 0))) {
      auto f = [&](Real a) { return amplitude_slope(B, a).value_or(std::numeric_limits<Real>::quiet_NaN()); };
      std::uintmax_t iters = 200;
      try {
        const auto [lo, hi] = boost::math::tools::toms748_solve(f, prev_A, A, *prev_slope, *slope,
                                                                 boost::math::tools::eps_tolerance<Real>(50), iters);
        const Real root = (lo + hi) / 2;
        const auto b = amplitude_k3(B, root);
        const auto d = amplitude_slope(B, root);
        if (b && d && std::fabs(*d) * root / std::fabs(*b) <= 1e-6L) roots.push_back(root);
      } catch (const std::exception&) {
      }
    }
    prev_slope = slope;
    prev_A = A;
  }
  return roots;
}

/// Conjugate couple A = t +- i s at fixed t: s^2 = (2 t B2 - B3) / B1 - t^2.
inline std::optional<Real> conjugate_s(const std::vector<Real>& B, Real t) {
  const Real s2 = (2 * t * B[1] - B[2]) / B[0] - t * t;
  if (!(s2 > 0)) return std::nullopt;
  return std::sqrt(s2);
}

/// Weight n of the lead factor: 2 Re(n A) = B1, 2 Re(n A^2) = B2.
inline Complex conjugate_weight(const std::vector<Real>& B, Complex A) {
  const Complex A2 = A * A;
  // Unknowns (u, v) with n = u + i v: 2(u Re A - v Im A) = B1, 2(u Re A2 - v Im A2) = B2.
  const Real det = A.real() * (-A2.imag()) - (-A.imag()) * A2.real();
  const Real u = (B[0] / 2 * (-A2.imag()) - (-A.imag()) * B[1] / 2) / det;
  const Real v = (A.real() * B[1] / 2 - A2.real() * B[0] / 2) / det;
  return {u, v};
}

/// Random real nodes with moduli in [0.2, 5] and pairwise separation >= 0.1,
/// weights in [-3, 3] with |w| >= 0.1.
struct PronyInstance {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

inline PronyInstance random_prony(std::mt19937_64& rng, std::size_t p) {
  std::uniform_real_distribution<double> modulus(0.2, 5.0);
  std::uniform_real_distribution<double> weight(0.1, 3.0);
  std::bernoulli_distribution negative(0.5);
  PronyInstance out;
  while (out.nodes.size() < p) {
    const Real A = negative(rng) ? -modulus(rng) : modulus(rng);
    bool ok = true;
    for (Real other : out.nodes) ok = ok && std::fabs(other - A) >= 0.1L;
    if (ok) out.nodes.push_back(A);
  }
  for (std::size_t i = 0; i < p; ++i) out.weights.push_back(negative(rng) ? -weight(rng) : weight(rng));
  return out;
}

}  // namespace oracle

#endif
