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

#ifndef FACTORAPPROX_POLYNOMIAL_HPP
#define FACTORAPPROX_POLYNOMIAL_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <vector>

#include "factorapprox/error.hpp"
#include "factorapprox/scalar.hpp"

namespace factorapprox {

/// z^p + q_{p-1} z^{p-1} + ... + q_0, stored as q_0..q_{p-1}.
struct MonicPolynomial {
  std::vector<Complex> lower;

  std::size_t degree() const { return lower.size(); }

  Complex operator()(Complex z) const {
    Complex v(1);
    for (auto it = lower.rbegin(); it != lower.rend(); ++it) v = v * z + *it;
    return v;
  }

  Complex derivative(Complex z) const {
    const std::size_t p = degree();
    Complex v = Complex(static_cast<Real>(p));
    for (std::size_t j = p - 1; j >= 1; --j) v = v * z + Real(j) * lower[j];
    return v;
  }

  bool has_real_coefficients() const {
    return std::all_of(lower.begin(), lower.end(), [](const Complex& q) { return q.imag() == 0; });
  }
};

/// Synthetic division by (z - root); the remainder is discarded.
inline MonicPolynomial deflate(const MonicPolynomial& poly, Complex root) {
  const std::size_t p = poly.degree();
  if (p == 0) fail(Errc::invalid_argument, "cannot deflate a constant polynomial");
  // Quotient b_{p-1} = 1, b_{j-1} = q_j + root * b_j.
  std::vector<Complex> b(p, Complex(0));
  b[p - 1] = Complex(1);
  for (std::size_t j = p - 1; j >= 1; --j) b[j - 1] = poly.lower[j] + root * b[j];
  MonicPolynomial out;
  out.lower.assign(b.begin(), b.end() - 1);
  return out;
}

/// Ascending modulus; a conjugate pair keeps its positive-imaginary member
/// first.
inline bool node_order(const Complex& a, const Complex& b) {
  const Real ma = std::abs(a);
  const Real mb = std::abs(b);
  if (ma != mb) return ma < mb;
  if (a.imag() != b.imag()) return a.imag() > b.imag();
  return a.real() < b.real();
}

/// Roots via eigenvalues of the companion matrix, each polished by one
/// Newton step when the step reduces |P|.
inline std::vector<Complex> polynomial_roots(const MonicPolynomial& poly) {
  const std::size_t p = poly.degree();
  std::vector<Complex> roots;
  if (p == 0) return roots;
  if (p == 1) {
    roots.push_back(-poly.lower[0]);
    return roots;
  }
  const auto n = static_cast<Eigen::Index>(p);
  if (poly.has_real_coefficients()) {
    Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> companion =
        Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1;
    for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -poly.lower[static_cast<std::size_t>(i)].real();
    Eigen::EigenSolver<decltype(companion)> solver(companion, false);
    if (solver.info() != Eigen::Success) fail(Errc::degenerate_moments, "companion eigenvalue iteration failed");
    for (Eigen::Index i = 0; i < n; ++i) roots.push_back(solver.eigenvalues()(i));
  } else {
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> companion =
        Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1;
    for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -poly.lower[static_cast<std::size_t>(i)];
    Eigen::ComplexEigenSolver<decltype(companion)> solver(companion, false);
    if (solver.info() != Eigen::Success) fail(Errc::degenerate_moments, "companion eigenvalue iteration failed");
    for (Eigen::Index i = 0; i < n; ++i) roots.push_back(solver.eigenvalues()(i));
  }

  const bool real_poly = poly.has_real_coefficients();
  for (auto& z : roots) {
    const Complex d = poly.derivative(z);
    if (d == Complex(0)) continue;
    Complex polished = z - poly(z) / d;
    // Keep real roots real and conjugate pairs conjugate.
    if (real_poly && z.imag() == 0) polished.imag(0);
    if (std::abs(poly(polished)) < std::abs(poly(z))) z = polished;
  }
  if (real_poly) {
    // Polishing may have broken exact conjugacy; rebuild followers from leads.
    std::vector<Complex> out;
    for (const auto& z : roots)
      if (z.imag() == 0) out.push_back(z);
    for (const auto& z : roots)
      if (z.imag() > 0) {
        out.push_back(z);
        out.push_back(std::conj(z));
      }
    if (out.size() != p) fail(Errc::asymmetric_roots, "companion eigenvalues are not closed under conjugation");
    roots = std::move(out);
  }
  std::sort(roots.begin(), roots.end(), node_order);
  return roots;
}

}  // namespace factorapprox

#endif
