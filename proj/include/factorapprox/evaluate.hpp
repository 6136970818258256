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

#ifndef FACTORAPPROX_EVALUATE_HPP
#define FACTORAPPROX_EVALUATE_HPP

#include <cmath>
#include <vector>

#include "factorapprox/error.hpp"
#include "factorapprox/factor_solver.hpp"
#include "factorapprox/scalar.hpp"
#include "factorapprox/series.hpp"

namespace factorapprox {

/// Large-x power law amplitude * x^exponent.
struct AsymptoticForm {
  Real amplitude = 1;
  Real exponent = 0;
};

/// Tolerance on the imaginary part left after conjugate factors cancel.
inline constexpr Real kImaginaryResidue = 1e-10L;

/// Evaluates multiplier * prefactor_value * prod (1 + A_i x)^{n_i}. Terms
/// are accumulated in log space with compensated summation.
inline Real evaluate(const FactorApproximant& f, Real x, Real prefactor_value = 1, bool unsafe_domain = false) {
  if (!std::isfinite(x)) fail(Errc::invalid_argument, "evaluation point must be finite");
  if (x < 0 && !unsafe_domain) fail(Errc::invalid_argument, "negative x requires the unsafe-domain flag");
  ComplexCompensatedSum log_sum;
  for (const auto& p : f.pairs) {
    if (p.n == Complex(0)) continue;
    const Complex ax = p.A * x;
    const Complex z = Real(1) + ax;
    if (std::abs(z) <= 64 * std::numeric_limits<Real>::epsilon() * std::max(Real(1), std::abs(ax)))
      fail(Errc::pole, "factor (1 + A x) vanishes at x = " + format_real(x) + " for A = " + format_real(p.A.real()));
    log_sum.add(p.n * log1p(ax));
  }
  const Complex s = log_sum.value();
  if (std::fabs(s.imag()) > kImaginaryResidue)
    fail(Errc::branch_inconsistent, "complex value at x = " + format_real(x) + " (imaginary log part " +
                                        format_real(s.imag()) + ")");
  return f.prefactor_multiplier * prefactor_value * std::exp(s.real());
}

/// B = prod A_i^{n_i} (principal branch) and beta = sum n_i, scaled by the
/// approximant's multiplier.
inline AsymptoticForm asymptote(const FactorApproximant& f) {
  ComplexCompensatedSum log_b;
  ComplexCompensatedSum beta;
  for (const auto& p : f.pairs) {
    if (p.n == Complex(0)) continue;
    if (p.A == Complex(0)) fail(Errc::invalid_argument, "zero node with nonzero weight has no power-law limit");
    log_b.add(p.n * std::log(p.A));
    beta.add(p.n);
  }
  const Complex lb = log_b.value();
  const Complex b = beta.value();
  if (std::fabs(lb.imag()) > kImaginaryResidue * std::max(Real(1), std::fabs(lb.real())) ||
      std::fabs(b.imag()) > kImaginaryResidue * std::max(Real(1), std::fabs(b.real())))
    fail(Errc::branch_inconsistent, "amplitude or exponent is not real");
  return {f.prefactor_multiplier * std::exp(lb.real()), b.real()};
}

/// Taylor coefficients a_1..a_k of the approximant (multiplier excluded).
inline std::vector<Real> reexpand(const FactorApproximant& f, std::size_t k) {
  if (k == 0) fail(Errc::invalid_argument, "re-expansion order must be positive");
  std::vector<Real> c(k);
  std::vector<Complex> powers(f.pairs.size(), Complex(1));
  for (std::size_t n = 1; n <= k; ++n) {
    ComplexCompensatedSum b;
    for (std::size_t i = 0; i < f.pairs.size(); ++i) {
      powers[i] *= f.pairs[i].A;
      b.add(f.pairs[i].n * powers[i]);
    }
    const Real bn = b.value().real();
    c[n - 1] = (n % 2 == 1 ? bn : -bn) / static_cast<Real>(n);
  }
  return exp_series(c);
}

/// nu = 1 / (2 f*(1)).
inline Real critical_index_nu(const FactorApproximant& f) {
  const Real v = evaluate(f, 1, 1);
  if (!(v > 0)) fail(Errc::invalid_index, "f*(1) = " + format_real(v) + " is not positive");
  return 1 / (2 * v);
}

/// nu = 1/2 + beta/4.
inline Real polymer_exponent(const FactorApproximant& f) { return Real(0.5) + asymptote(f).exponent / 4; }

/// Signed percentage error 100 (approx - exact) / exact.
inline Real percentage_error(Real approx, Real exact) {
  if (exact == 0) fail(Errc::invalid_argument, "percentage error against a zero exact value");
  return 100 * (approx - exact) / exact;
}

}  // namespace factorapprox

#endif
