#include "fairvote/numeric.hpp"

#include <cctype>
#include <stdexcept>

namespace fairvote {
namespace {

using boost::multiprecision::cpp_int;

cpp_int pow10(long e) {
  cpp_int p = 1;
  for (long i = 0; i < e; ++i) p *= 10;
  return p;
}

cpp_int parse_integer(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("empty number");
  cpp_int v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad digit in number");
    v = v * 10 + (c - '0');
  }
  return negative ? cpp_int(-v) : v;
}

Rational parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    exponent = static_cast<long>(parse_integer(s.substr(e + 1)).convert_to<long long>());
    s = s.substr(0, e);
  }
  std::string digits;
  bool seen_digit = false;
  bool after_point = false;
  for (char c : s) {
    if (c == '.') {
      if (after_point) throw std::invalid_argument("two decimal points");
      after_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (after_point) --exponent;
    } else {
      throw std::invalid_argument("bad character in number");
    }
  }
  if (!seen_digit) throw std::invalid_argument("number without digits");
  Rational v(parse_integer(digits));
  if (exponent > 0) v *= Rational(pow10(exponent));
  if (exponent < 0) v /= Rational(pow10(-exponent));
  return negative ? Rational(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    cpp_int den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(parse_integer(text.substr(0, slash))) / Rational(den);
  }
  return parse_decimal(text);
}

std::string rational_string(const Rational& v) {
  return boost::multiprecision::numerator(v).str() + "/" +
         boost::multiprecision::denominator(v).str();
}

}  // namespace fairvote
