#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fraisse {

// Exact rational backed by GMP. Arithmetic results are always canonical
// (lowest terms, positive denominator); values built from raw strings are
// not, so go through parse_rational.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Parses "p/q", "p", or a finite decimal such as "-0.25" into an exact value.
/// Throws fraisse::Error(invalid_input) on anything else, including q == 0.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

/// 2^k as an exact rational; negative k gives 1/2^|k|.
Rational pow2(int k);

/// base^k for a small non-negative integer exponent.
Rational pow_int(const Rational& base, unsigned k);

/// The values times their common denominator, when every product has
/// magnitude below `limit`.
struct ScaledIntegers {
  Integer denominator;
  std::vector<std::int64_t> values;
};
std::optional<ScaledIntegers> scale_to_int64(std::span<const Rational> values, std::int64_t limit);

/// Display-only decimal rendering; never used in computations.
double to_double(const Rational& value);

}  // namespace fraisse
