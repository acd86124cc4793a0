#include "outrank/rational.hpp"

#include <string>

#include "outrank/error.hpp"

namespace outrank {

std::string to_fixed(const Rational& value, int digits) {
  BigInt scale{1};
  for (int n = 0; n < digits; ++n) scale *= 10;

  const BigInt num = numerator_of(value);
  const BigInt den = denominator_of(value);
  const bool negative = num < 0;
  const BigInt scaled = (negative ? BigInt(-num) : num) * scale;
  BigInt quotient = scaled / den;
  const BigInt remainder = scaled % den;
  if (remainder * 2 >= den) ++quotient;

  std::string digits_text = quotient.str();
  if (digits > 0) {
    if (digits_text.size() <= static_cast<std::size_t>(digits)) {
      digits_text.insert(0, static_cast<std::size_t>(digits) + 1 - digits_text.size(), '0');
    }
    digits_text.insert(digits_text.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && quotient != 0) digits_text.insert(0, "-");
  return digits_text;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Rational parse_plain(std::string_view text, std::string_view original) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
      (dot != std::string_view::npos && !all_digits(frac))) {
    throw data_error("BAD_RATIONAL", "cannot parse '" + std::string(original) + "' as a number");
  }
  BigInt num{0};
  for (char c : whole) num = num * 10 + (c - '0');
  BigInt den{1};
  for (char c : frac) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  if (negative) num = -num;
  return Rational{num, den};
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_plain(text, text);
  const Rational num = parse_plain(text.substr(0, slash), text);
  const std::string_view den_text = text.substr(slash + 1);
  if (!all_digits(den_text)) {
    throw data_error("BAD_RATIONAL", "cannot parse '" + std::string(text) + "' as a number");
  }
  const Rational den = parse_plain(den_text, text);
  if (den == 0) {
    throw data_error("BAD_RATIONAL", "zero denominator in '" + std::string(text) + "'");
  }
  return num / den;
}

}  // namespace outrank
