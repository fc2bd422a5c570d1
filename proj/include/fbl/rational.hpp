#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <type_traits>

namespace fbl {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "-1/10" or a plain decimal such as "0.25" exactly.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q == 1).
std::string to_string(const Rational& q);

/// Exact conversion of a finite double.
Rational rational_from_double(double x);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Scalar lifting used by templates that accept both exact and floating values.
template <class Scalar>
Scalar scalar_from(const Rational& q) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return q;
  } else {
    return static_cast<Scalar>(to_double(q));
  }
}

template <class Scalar>
Scalar abs_value(const Scalar& x) {
  return x < Scalar(0) ? Scalar(-x) : x;
}

}  // namespace fbl
