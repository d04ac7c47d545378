#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace planim {

/// Exact decimal value such as 0.8 = 8/10, kept unreduced so it prints back
/// as written.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  bool operator==(const Rational& o) const { return num * o.den == o.num * den; }

  static std::optional<Rational> parse_decimal(std::string_view text);
  std::string to_string() const;
};

/// floor(num / den + 1/2) for den > 0.
inline std::int64_t round_half_up(std::int64_t num, std::int64_t den) {
  std::int64_t n = 2 * num + den;
  std::int64_t d = 2 * den;
  std::int64_t q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}

}  // namespace planim
