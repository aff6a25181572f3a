#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

namespace fairvote {

using Rational = boost::multiprecision::cpp_rational;

template <typename T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

template <typename T>
T from_ratio(std::int64_t num, std::int64_t den) {
  if constexpr (is_exact_v<T>) {
    return Rational(num) / Rational(den);
  } else {
    return static_cast<double>(num) / static_cast<double>(den);
  }
}

// Converts a double to T. For Rational this is the exact binary value.
template <typename T>
T from_double(double v) {
  if constexpr (is_exact_v<T>) {
    return Rational(v);
  } else {
    return v;
  }
}

// Parses "3", "-2", "0.25", "1e-3" or "7/12". Decimal input is converted
// exactly, so "0.1" becomes 1/10 rather than the nearest double.
Rational parse_rational(std::string_view text);

// Always "p/q", including "1/1" and "0/1".
std::string rational_string(const Rational& v);

// n-th harmonic number H_n.
template <typename T>
T harmonic_number(std::size_t n) {
  T h = 0;
  for (std::size_t r = 1; r <= n; ++r) h += from_ratio<T>(1, static_cast<std::int64_t>(r));
  return h;
}

}  // namespace fairvote
