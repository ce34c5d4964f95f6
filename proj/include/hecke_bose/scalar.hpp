// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace hecke_bose {

using Rational = mpq_class;
using Complex = std::complex<double>;

template <class T>
inline constexpr bool is_complex_v = false;
template <class T>
inline constexpr bool is_complex_v<std::complex<T>> = true;

/// Converts an exact rational into the working scalar type.
template <class Scalar>
Scalar scalar_from(const Rational& q) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return q;
  } else {
    return Scalar(q.get_d());
  }
}

template <class Scalar>
Scalar scalar_from_int(long n) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return Rational(n);
  } else {
    return Scalar(static_cast<double>(n));
  }
}

template <class Scalar>
bool is_zero(const Scalar& s) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return sgn(s) == 0;
  } else {
    return s == Scalar(0);
  }
}

/// Integer power by repeated squaring; negative exponents invert the base.
template <class Scalar>
Scalar ipow(const Scalar& base, long e) {
  if (e < 0) {
    if (is_zero(base)) throw std::domain_error("ipow: zero base with negative exponent");
    return ipow<Scalar>(Scalar(scalar_from_int<Scalar>(1) / base), -e);
  }
  Scalar result = scalar_from_int<Scalar>(1);
  Scalar b = base;
  while (e > 0) {
    if (e & 1) result *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  return result;
}

/// Parses "a", "-a" or "a/b" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  const auto slash = s.find('/');
  auto check_int = [](const std::string& part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && part[0] == '-') i = 1;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!check_int(s, true)) throw std::invalid_argument("malformed rational: " + s);
    return Rational(mpz_class(s));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!check_int(num, true) || !check_int(den, false))
    throw std::invalid_argument("malformed rational: " + s);
  mpz_class d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Rational q(mpz_class(num), d);
  q.canonicalize();
  return q;
}

/// "num/den", or just "num" for integers.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace hecke_bose
