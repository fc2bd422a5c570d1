#include "fbl/rational.hpp"

#include "fbl/errors.hpp"

#include <cctype>
#include <cmath>

namespace fbl {

namespace {

boost::multiprecision::cpp_int parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("malformed rational: '" + std::string(whole) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("malformed rational: '" + std::string(whole) + "'");
    }
  }
  return boost::multiprecision::cpp_int(std::string(digits));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = parse_integer(s.substr(0, slash), text);
    auto den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    value = Rational(num, den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto int_part = s.substr(0, dot);
    auto frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) throw ParseError("malformed rational: '" + std::string(text) + "'");
    boost::multiprecision::cpp_int ip = int_part.empty() ? 0 : parse_integer(int_part, text);
    boost::multiprecision::cpp_int fp = frac_part.empty() ? 0 : parse_integer(frac_part, text);
    boost::multiprecision::cpp_int scale = boost::multiprecision::pow(boost::multiprecision::cpp_int(10),
                                                                      static_cast<unsigned>(frac_part.size()));
    value = Rational(ip * scale + fp, scale);
  } else {
    value = Rational(parse_integer(s, text));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InvalidInput("non-finite value cannot be made exact");
  int exponent = 0;
  double mantissa = std::frexp(x, &exponent);
  // 53 bits of mantissa fit exactly in an int64.
  auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational r{boost::multiprecision::cpp_int(scaled)};
  boost::multiprecision::cpp_int two_pow = boost::multiprecision::pow(boost::multiprecision::cpp_int(2),
                                                                      static_cast<unsigned>(std::abs(exponent)));
  return exponent >= 0 ? Rational(r * two_pow) : Rational(r / two_pow);
}

}  // namespace fbl
