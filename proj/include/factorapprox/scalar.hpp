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

#ifndef FACTORAPPROX_SCALAR_HPP
#define FACTORAPPROX_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <string_view>
#include <variant>

#include "factorapprox/error.hpp"

namespace factorapprox {

// Extended-precision float backend.
using Real = long double;
using Complex = std::complex<Real>;
using Rational = boost::multiprecision::cpp_rational;

inline Real to_real(const Rational& r) { return r.convert_to<Real>(); }
inline Real to_real(Real r) { return r; }

template <class Scalar>
inline bool is_finite(const Scalar& v) {
  if constexpr (std::is_floating_point_v<Scalar>)
    return std::isfinite(v);
  else
    return true;
}

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(Real v) {
    const Real t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_ = 0;
  Real comp_ = 0;
};

class ComplexCompensatedSum {
 public:
  void add(Complex v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

/// log(1 + z) without cancellation for small |z| (Kahan's trick; valid for
/// complex arguments away from the branch cut).
inline Complex log1p(Complex z) {
  const Complex w = Real(1) + z;
  if (w == Complex(1)) return z;
  if (w.imag() == 0 && z.imag() == 0 && w.real() > 0) return std::log1p(z.real());
  return std::log(w) * (z / (w - Real(1)));
}

/// Shortest decimal string that parses back to the identical long double.
inline std::string format_real(Real v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline Real parse_real(std::string_view text) {
  if (text == "nan") return std::numeric_limits<Real>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<Real>::infinity();
  if (text == "-inf") return -std::numeric_limits<Real>::infinity();
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  Real v{};
  const auto res = std::from_chars(body.data(), body.data() + body.size(), v);
  if (res.ec != std::errc() || res.ptr != body.data() + body.size())
    fail(Errc::parse_error, "not a number: '" + std::string(text) + "'");
  return v;
}

/// A coefficient literal: "p/q" and plain integers are exact, anything with a
/// decimal point or exponent is a binary float.
using ScalarLiteral = std::variant<Rational, Real>;

inline bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline ScalarLiteral parse_scalar_literal(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) fail(Errc::parse_error, "empty coefficient");
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!den.empty() && den.front() == '+') den.remove_prefix(1);
    if (!is_integer_text(num) || !is_integer_text(den))
      fail(Errc::parse_error, "malformed rational '" + std::string(text) + "'");
    std::string num_s(num);
    if (!num_s.empty() && num_s.front() == '+') num_s.erase(0, 1);
    const boost::multiprecision::cpp_int p(num_s);
    const boost::multiprecision::cpp_int q{std::string(den)};
    if (q == 0) fail(Errc::parse_error, "zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
  }
  if (is_integer_text(text)) {
    std::string s(text);
    if (s.front() == '+') s.erase(0, 1);
    return Rational(boost::multiprecision::cpp_int(s));
  }
  const Real v = parse_real(text);
  if (!std::isfinite(v)) fail(Errc::parse_error, "non-finite coefficient '" + std::string(text) + "'");
  return v;
}

inline std::string format_rational(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace factorapprox

#endif
