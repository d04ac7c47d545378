#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace planim {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  auto operator<=>(const Rgb&) const = default;

  /// "#RRGGBB", uppercase.
  std::string hex() const;
  /// Each channel scaled by 0.6, rounded half up.
  Rgb darkened() const;
};

/// Accepts "#RRGGBB" (any case).
std::optional<Rgb> parse_hex_color(std::string_view text);

/// Looks up the fixed constant table (red, green, blue, yellow, orange,
/// purple, cyan, magenta, black, white, gray, brown).
std::optional<Rgb> named_color(std::string_view name);

/// Name of `c` in the constant table, if it has one.
std::optional<std::string_view> color_name(Rgb c);

/// Deterministic stand-in for `random`: FNV-1a over the seed and object name.
Rgb random_color(std::uint64_t seed, std::string_view object);

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 1469598103934665603ULL);

}  // namespace planim
