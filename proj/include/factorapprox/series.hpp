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

#ifndef FACTORAPPROX_SERIES_HPP
#define FACTORAPPROX_SERIES_HPP

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "factorapprox/error.hpp"
#include "factorapprox/scalar.hpp"

namespace factorapprox {

/// Highest series order accepted unless the caller raises the cap.
inline constexpr std::size_t kDefaultMaxOrder = 16;

/// Truncated series f0(x) * sum_{n=0}^{K} a_n x^n, kept normalized so that
/// a_0 == 1. The scalar that was divided out lives in `multiplier`.
template <class Scalar>
struct SeriesExpansion {
  std::string prefactor_tag = "unit";
  Scalar multiplier{1};
  std::vector<Scalar> coefficients{Scalar(1)};

  std::size_t order() const { return coefficients.size() - 1; }
};

using ExactSeries = SeriesExpansion<Rational>;
using FloatSeries = SeriesExpansion<Real>;
using AnySeries = std::variant<ExactSeries, FloatSeries>;

/// Moments B_1..B_k of the accuracy-through-order system. Stored 0-based;
/// use `at(n)` for the 1-based moment B_n.
template <class Scalar>
struct LogMoments {
  std::vector<Scalar> values;

  std::size_t order() const { return values.size(); }
  const Scalar& at(std::size_t n) const { return values.at(n - 1); }
};

template <class Scalar>
SeriesExpansion<Scalar> normalize_series(std::span<const Scalar> raw, std::size_t order,
                                         std::string prefactor_tag = "unit",
                                         std::size_t max_order = kDefaultMaxOrder) {
  if (raw.empty()) fail(Errc::invalid_argument, "empty coefficient list");
  if (order > max_order)
    fail(Errc::unsupported_order,
         "order " + std::to_string(order) + " exceeds the supported maximum " + std::to_string(max_order));
  if (raw.size() < order + 1)
    fail(Errc::invalid_argument, "order " + std::to_string(order) + " needs " + std::to_string(order + 1) +
                                     " coefficients, got " + std::to_string(raw.size()));
  for (std::size_t i = 0; i <= order; ++i)
    if (!is_finite(raw[i])) fail(Errc::invalid_argument, "coefficient a_" + std::to_string(i) + " is not finite");
  if (raw[0] == Scalar(0)) fail(Errc::zero_leading_coefficient, "leading coefficient a_0 is zero");

  SeriesExpansion<Scalar> s;
  s.prefactor_tag = std::move(prefactor_tag);
  s.multiplier = raw[0];
  s.coefficients.assign(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(order + 1));
  s.coefficients[0] = Scalar(1);
  for (std::size_t i = 1; i <= order; ++i) s.coefficients[i] = raw[i] / raw[0];
  return s;
}

template <class Scalar>
SeriesExpansion<Scalar> normalize_series(const std::vector<Scalar>& raw, std::size_t order,
                                         std::string prefactor_tag = "unit",
                                         std::size_t max_order = kDefaultMaxOrder) {
  return normalize_series(std::span<const Scalar>(raw), order, std::move(prefactor_tag), max_order);
}

/// Taylor coefficients c_1..c_k of ln(sum a_m x^m), a_0 == 1, from
///   n c_n = n a_n - sum_{m=1}^{n-1} m c_m a_{n-m}.
template <class Scalar>
std::vector<Scalar> log_coefficients(std::span<const Scalar> a, std::size_t k) {
  if (a.empty() || k + 1 > a.size())
    fail(Errc::invalid_argument, "log_coefficients: order " + std::to_string(k) + " exceeds series order");
  std::vector<Scalar> c(k + 1, Scalar(0));
  for (std::size_t n = 1; n <= k; ++n) {
    Scalar acc = Scalar(static_cast<long>(n)) * a[n];
    for (std::size_t m = 1; m < n; ++m) acc -= Scalar(static_cast<long>(m)) * c[m] * a[n - m];
    c[n] = acc / Scalar(static_cast<long>(n));
  }
  c.erase(c.begin());
  return c;
}

template <class Scalar>
std::vector<Scalar> log_coefficients(const SeriesExpansion<Scalar>& s, std::size_t k) {
  return log_coefficients(std::span<const Scalar>(s.coefficients), k);
}

/// Inverse of log_coefficients: a_1..a_k of exp(sum c_n x^n), with
///   n a_n = sum_{m=1}^{n} m c_m a_{n-m}.
template <class Scalar>
std::vector<Scalar> exp_series(std::span<const Scalar> c) {
  const std::size_t k = c.size();
  std::vector<Scalar> a(k + 1, Scalar(0));
  a[0] = Scalar(1);
  for (std::size_t n = 1; n <= k; ++n) {
    Scalar acc = Scalar(0);
    for (std::size_t m = 1; m <= n; ++m) acc += Scalar(static_cast<long>(m)) * c[m - 1] * a[n - m];
    a[n] = acc / Scalar(static_cast<long>(n));
  }
  a.erase(a.begin());
  return a;
}

template <class Scalar>
std::vector<Scalar> exp_series(const std::vector<Scalar>& c) {
  return exp_series(std::span<const Scalar>(c));
}

/// B_n = (-1)^{n-1} n c_n.
template <class Scalar>
LogMoments<Scalar> log_moments(std::span<const Scalar> a, std::size_t k) {
  const auto c = log_coefficients(a, k);
  LogMoments<Scalar> m;
  m.values.resize(k);
  for (std::size_t n = 1; n <= k; ++n) {
    Scalar b = Scalar(static_cast<long>(n)) * c[n - 1];
    m.values[n - 1] = (n % 2 == 1) ? b : Scalar(-b);
  }
  return m;
}

template <class Scalar>
LogMoments<Scalar> log_moments(const SeriesExpansion<Scalar>& s, std::size_t k) {
  return log_moments(std::span<const Scalar>(s.coefficients), k);
}

template <class Scalar>
LogMoments<Real> to_real(const LogMoments<Scalar>& m) {
  LogMoments<Real> out;
  out.values.reserve(m.values.size());
  for (const auto& v : m.values) out.values.push_back(to_real(v));
  return out;
}

// Helpers over the exact/float variant.

inline std::size_t series_order(const AnySeries& s) {
  return std::visit([](const auto& v) { return v.order(); }, s);
}

inline const std::string& series_prefactor_tag(const AnySeries& s) {
  return std::visit([](const auto& v) -> const std::string& { return v.prefactor_tag; }, s);
}

inline Real series_multiplier(const AnySeries& s) {
  return std::visit([](const auto& v) { return to_real(v.multiplier); }, s);
}

inline bool is_exact(const AnySeries& s) { return std::holds_alternative<ExactSeries>(s); }

inline std::vector<Real> series_coefficients(const AnySeries& s) {
  return std::visit(
      [](const auto& v) {
        std::vector<Real> out;
        for (const auto& c : v.coefficients) out.push_back(to_real(c));
        return out;
      },
      s);
}

/// Moments in the float backend, computed exactly first when the series is
/// rational.
inline LogMoments<Real> real_moments(const AnySeries& s, std::size_t k) {
  if (k > series_order(s))
    fail(Errc::invalid_argument,
         "moment order " + std::to_string(k) + " exceeds series order " + std::to_string(series_order(s)));
  return std::visit([k](const auto& v) { return to_real(log_moments(v, k)); }, s);
}

/// Builds a series from literals: exact when every literal is rational,
/// float otherwise.
inline AnySeries normalize_literals(const std::vector<ScalarLiteral>& raw, std::size_t order,
                                    std::string prefactor_tag = "unit",
                                    std::size_t max_order = kDefaultMaxOrder) {
  bool all_exact = true;
  for (const auto& v : raw) all_exact = all_exact && std::holds_alternative<Rational>(v);
  if (all_exact) {
    std::vector<Rational> r;
    for (const auto& v : raw) r.push_back(std::get<Rational>(v));
    return normalize_series(r, order, std::move(prefactor_tag), max_order);
  }
  std::vector<Real> r;
  for (const auto& v : raw)
    r.push_back(std::visit([](const auto& x) { return to_real(x); }, v));
  return normalize_series(r, order, std::move(prefactor_tag), max_order);
}

}  // namespace factorapprox

#endif
