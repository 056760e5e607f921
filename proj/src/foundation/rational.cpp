#include "fraisse/rational.hpp"

#include "fraisse/error.hpp"

#include <cctype>

namespace fraisse {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// GMP reads a leading 0 as an octal prefix.
Integer decimal(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer(std::string(digits));
}

[[noreturn]] void bad(std::string_view text) {
  fail(ErrorCode::invalid_input, "not a rational number: \"" + std::string(text) + "\"");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Integer num, den(1);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) bad(text);
    num = decimal(p);
    den = decimal(q);
    if (den == 0) fail(ErrorCode::invalid_input, "zero denominator in \"" + std::string(text) + "\"");
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      bad(text);
    num = decimal(std::string(whole) + std::string(frac));
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  } else {
    if (!all_digits(s)) bad(text);
    num = decimal(s);
  }
  Rational r(num, den);  // canonicalizes
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) {
  auto num = numerator(value);
  auto den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational pow2(int k) {
  Integer p(1);
  p <<= static_cast<unsigned>(k < 0 ? -k : k);
  return k < 0 ? Rational(Integer(1), p) : Rational(p);
}

Rational pow_int(const Rational& base, unsigned k) {
  Rational out(1);
  for (unsigned i = 0; i < k; ++i) out *= base;
  return out;
}

std::optional<ScaledIntegers> scale_to_int64(std::span<const Rational> values, std::int64_t limit) {
  Integer den(1);
  for (const auto& v : values) {
    den = boost::multiprecision::lcm(den, denominator(v));
    if (den >= limit) return std::nullopt;
  }
  ScaledIntegers out{den, {}};
  out.values.reserve(values.size());
  for (const auto& v : values) {
    const Integer x = numerator(v) * (den / denominator(v));
    if (x >= limit || x <= -limit) return std::nullopt;
    out.values.push_back(x.convert_to<std::int64_t>());
  }
  return out;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace fraisse
