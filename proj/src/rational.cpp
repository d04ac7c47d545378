#include "planim/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace planim {

std::optional<Rational> Rational::parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = text.front() == '-';
  if (negative) text.remove_prefix(1);
  if (text.empty() || text.size() > 15) return std::nullopt;
  Rational r;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) return std::nullopt;
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    seen_digit = true;
    r.num = r.num * 10 + (c - '0');
    if (seen_point) r.den *= 10;
  }
  if (!seen_digit || text.back() == '.') return std::nullopt;
  if (negative) r.num = -r.num;
  return r;
}

std::string Rational::to_string() const {
  std::int64_t digits = 0;
  for (std::int64_t d = den; d > 1 && d % 10 == 0; d /= 10) ++digits;
  std::int64_t pow10 = 1;
  for (std::int64_t i = 0; i < digits; ++i) pow10 *= 10;
  if (pow10 != den) return std::to_string(num) + "/" + std::to_string(den);
  std::int64_t whole = std::llabs(num) / den;
  std::int64_t frac = std::llabs(num) % den;
  std::string s = (num < 0 ? "-" : "") + std::to_string(whole);
  if (digits > 0) {
    std::string f = std::to_string(frac);
    s += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
  }
  return s;
}

}  // namespace planim
