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

#ifndef FACTORAPPROX_CORPUS_HPP
#define FACTORAPPROX_CORPUS_HPP

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "factorapprox/error.hpp"
#include "factorapprox/evaluate.hpp"
#include "factorapprox/optimizer.hpp"
#include "factorapprox/scalar.hpp"
#include "factorapprox/series.hpp"

namespace factorapprox {

enum class CaseId {
  log,
  factorial,
  debye_huckel,
  stat_integral_1,
  stat_integral_2,
  partition,
  anharmonic,
  epsilon_nu,
  polymer,
};

inline constexpr std::array<CaseId, 9> kAllCases = {
    CaseId::log,       CaseId::factorial,  CaseId::debye_huckel, CaseId::stat_integral_1, CaseId::stat_integral_2,
    CaseId::partition, CaseId::anharmonic, CaseId::epsilon_nu,   CaseId::polymer};

constexpr std::string_view to_string(CaseId id) noexcept {
  switch (id) {
    case CaseId::log: return "log";
    case CaseId::factorial: return "factorial";
    case CaseId::debye_huckel: return "debye-huckel";
    case CaseId::stat_integral_1: return "stat-integral-1";
    case CaseId::stat_integral_2: return "stat-integral-2";
    case CaseId::partition: return "partition";
    case CaseId::anharmonic: return "anharmonic";
    case CaseId::epsilon_nu: return "epsilon-nu";
    case CaseId::polymer: return "polymer";
  }
  return "log";
}

inline CaseId parse_case_id(std::string_view name) {
  for (auto id : kAllCases)
    if (to_string(id) == name) return id;
  fail(Errc::invalid_argument, "unknown corpus case '" + std::string(name) + "'");
}

/// Largest order of the closed-form generators.
inline constexpr std::size_t kClosedFormMaxOrder = 12;
/// Cases known only through four reference terms.
inline constexpr std::size_t kFourTermMaxOrder = 4;

namespace detail {

inline Rational factorial_q(unsigned n) {
  boost::multiprecision::cpp_int f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

inline Rational sign_q(unsigned n) { return n % 2 == 0 ? Rational(1) : Rational(-1); }

inline std::vector<ScalarLiteral> literals(std::initializer_list<std::string_view> text) {
  std::vector<ScalarLiteral> out;
  for (auto t : text) out.push_back(parse_scalar_literal(t));
  return out;
}

inline std::vector<ScalarLiteral> four_term(CaseId id) {
  switch (id) {
    case CaseId::factorial: return literals({"1", "1/12", "1/288", "-139/51840", "-571/2488320"});
    // f0 = 1/2; the decimals 3/4, -2.625, ... are exact binary fractions.
    case CaseId::anharmonic: return literals({"1/2", "3/4", "-21/8", "333/16", "-30885/128"});
    case CaseId::epsilon_nu: return literals({"1", "-0.1665", "-0.05865", "0.06225", "-0.1535"});
    case CaseId::polymer: return literals({"1", "4/3", "-2.075385396", "6.296879676", "-25.05725072"});
    default: break;
  }
  fail(Errc::invalid_argument, "no four-term data for " + std::string(to_string(id)));
}

inline std::vector<Rational> closed_form(CaseId id, std::size_t k) {
  std::vector<Rational> a(k + 1);
  for (unsigned n = 0; n <= k; ++n) {
    switch (id) {
      case CaseId::log: a[n] = sign_q(n) / Rational(n + 1); break;
      case CaseId::debye_huckel: a[n] = 2 * sign_q(n) / factorial_q(n + 2); break;
      case CaseId::stat_integral_1: a[n] = sign_q(n) * factorial_q(n); break;
      case CaseId::stat_integral_2: {
        // (1 + 2x) sum_m (-1)^m (2m)! x^{2m}
        auto even = [](unsigned j) { return j % 2 == 0 ? sign_q(j / 2) * factorial_q(j) : Rational(0); };
        a[n] = even(n) + (n >= 1 ? 2 * even(n - 1) : Rational(0));
        break;
      }
      case CaseId::partition:
        a[n] = sign_q(n) * factorial_q(4 * n) /
               (Rational(boost::multiprecision::pow(boost::multiprecision::cpp_int(16), n)) * factorial_q(2 * n) *
                factorial_q(n));
        break;
      default: fail(Errc::invalid_argument, "no closed-form generator for " + std::string(to_string(id)));
    }
  }
  return a;
}

inline bool has_closed_form(CaseId id) {
  switch (id) {
    case CaseId::log:
    case CaseId::debye_huckel:
    case CaseId::stat_integral_1:
    case CaseId::stat_integral_2:
    case CaseId::partition: return true;
    default: return false;
  }
}

template <class F>
Real integrate(F&& f, Real a, Real b) {
  Real error = 0;
  return boost::math::quadrature::gauss_kronrod<Real, 31>::integrate(f, a, b, 20, 1e-13L, &error);
}

/// Upper limit of the truncated exponential integrals; exp(-50) < 2e-22.
inline constexpr Real kTruncation = 50;

}  // namespace detail

/// Series of a benchmark case to order k, exact wherever the data are
/// fractions.
inline AnySeries corpus_series(CaseId id, std::size_t k) {
  if (detail::has_closed_form(id)) {
    if (k > kClosedFormMaxOrder)
      fail(Errc::unsupported_order, std::string(to_string(id)) + " is generated up to order " +
                                        std::to_string(kClosedFormMaxOrder));
    return normalize_series(detail::closed_form(id, k), k);
  }
  if (k > kFourTermMaxOrder)
    fail(Errc::unsupported_order,
         std::string(to_string(id)) + " has only " + std::to_string(kFourTermMaxOrder) + " known terms");
  return normalize_literals(detail::four_term(id), k);
}

inline bool has_oracle(CaseId id) { return id != CaseId::anharmonic && id != CaseId::epsilon_nu; }

/// Exact function value at x > 0.
inline Real corpus_exact(CaseId id, Real x) {
  if (!has_oracle(id)) fail(Errc::no_oracle, std::string(to_string(id)) + " has no exact evaluator");
  if (!(x > 0) || !std::isfinite(x)) fail(Errc::invalid_argument, "oracle argument must be finite and positive");
  switch (id) {
    case CaseId::log: return std::log1p(x) / x;
    case CaseId::factorial: {
      // e^{1/x} x^{1/2 + 1/x} Gamma(1 + 1/x) / sqrt(2 pi), in log space.
      const Real y = 1 / x;
      const Real two_pi = 2 * boost::math::constants::pi<Real>();
      return std::exp(y + (Real(0.5) + y) * std::log(x) + std::lgamma(1 + y) - std::log(two_pi) / 2);
    }
    case CaseId::debye_huckel: return 2 / x - 2 / (x * x) * (-std::expm1(-x));
    case CaseId::stat_integral_1:
      return detail::integrate([x](Real u) { return std::exp(-u) / (1 + x * u); }, 0, detail::kTruncation);
    case CaseId::stat_integral_2:
      return (1 + 2 * x) *
             detail::integrate([x](Real u) { return std::exp(-u) / (1 + x * x * u * u); }, 0, detail::kTruncation);
    case CaseId::partition: {
      const Real root_pi = std::sqrt(boost::math::constants::pi<Real>());
      const Real upper = std::sqrt(detail::kTruncation);
      return 2 / root_pi *
             detail::integrate([x](Real p) { const Real p2 = p * p; return std::exp(-p2 - x * p2 * p2); }, 0, upper);
    }
    case CaseId::polymer: return std::pow(1 + Real(7.524L) * x + Real(11.06L) * x * x, Real(0.1772L));
    default: break;
  }
  fail(Errc::no_oracle, std::string(to_string(id)) + " has no exact evaluator");
}

/// Reference large-x power law of a case.
inline AsymptoticForm corpus_asymptote(CaseId id) {
  switch (id) {
    case CaseId::factorial: return {0.398942L, 0.5L};
    case CaseId::anharmonic: return {0.667986L, Real(1) / 3};
    case CaseId::debye_huckel: return {2, -1};
    case CaseId::partition: return {1.023L, -0.25L};
    case CaseId::polymer: return {1.531L, 0.3544L};
    default: break;
  }
  fail(Errc::no_reference, std::string(to_string(id)) + " has no reference asymptote");
}

inline bool has_reference_asymptote(CaseId id) {
  switch (id) {
    case CaseId::factorial:
    case CaseId::anharmonic:
    case CaseId::debye_huckel:
    case CaseId::partition:
    case CaseId::polymer: return true;
    default: return false;
  }
}

struct ReferencePoint {
  Real x;
  Real value;
  std::string source;
};

/// Comparison point used by the report. Infinity means the amplitude of
/// the large-x law is compared instead of a function value.
inline Real default_point(CaseId id) {
  switch (id) {
    case CaseId::log: return 100;
    case CaseId::factorial: return 100;
    case CaseId::debye_huckel: return 10;
    case CaseId::stat_integral_1: return 10;
    case CaseId::stat_integral_2: return 5;
    case CaseId::epsilon_nu: return 1;
    case CaseId::polymer: return 10;
    case CaseId::partition:
    case CaseId::anharmonic: return std::numeric_limits<Real>::infinity();
  }
  return 1;
}

/// Reference values quoted alongside each case.
inline std::vector<ReferencePoint> reference_points(CaseId id) {
  switch (id) {
    case CaseId::log: return {{100, 0.046L, "exact value"}};
    case CaseId::epsilon_nu:
      return {{1, 1 / (2 * 0.628L), "Borel summation"}, {1, 1 / (2 * 0.631L), "lattice"}};
    case CaseId::polymer: return {{std::numeric_limits<Real>::infinity(), 0.5886L, "numerical nu"}};
    default: return {};
  }
}

/// Preferred branch when the case is optimized at order 3.
inline BranchChoice preferred_branch(CaseId id) {
  return id == CaseId::stat_integral_2 ? BranchChoice::conjugate : BranchChoice::automatic;
}

}  // namespace factorapprox

#endif
