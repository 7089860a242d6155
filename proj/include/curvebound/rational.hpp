#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace curvebound {

/// Exact arbitrary-precision rational, always stored reduced with a positive
/// denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline Rational half() { return make_rational(1, 2); }

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Accepts "p/q", "p" and finite decimals such as "0.25".
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

BigInt binomial(int n, int k);

}  // namespace curvebound
