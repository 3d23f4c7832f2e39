#pragma once

// Exact arithmetic for the oracle-scale code paths.

#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

namespace pacd {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a finite double (every double is a dyadic rational).
inline Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot convert non-finite double to a rational");
  if (x == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);  // x = mantissa * 2^exponent, |mantissa| in [0.5, 1)
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  BigInt numerator(scaled);
  BigInt denominator(1);
  if (exponent >= 0) {
    numerator <<= exponent;
  } else {
    denominator <<= -exponent;
  }
  return Rational(numerator, denominator);
}

inline BigInt to_bigint(unsigned __int128 value) {
  BigInt out(static_cast<std::uint64_t>(value >> 64));
  out <<= 64;
  out += static_cast<std::uint64_t>(value);
  return out;
}

/// Converts shift parameters and counts into the scalar type of a
/// computation: double at simulation scale, Rational in exact mode.
template <class Scalar>
Scalar scalar_from(double x) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return exact_rational(x);
  } else {
    return static_cast<Scalar>(x);
  }
}

template <class Scalar>
Scalar scalar_from_count(unsigned __int128 value) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return Rational(to_bigint(value));
  } else {
    return static_cast<Scalar>(value);
  }
}

template <class Scalar>
double to_double(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return x.template convert_to<double>();
  } else {
    return static_cast<double>(x);
  }
}

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace pacd
