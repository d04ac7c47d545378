#include "planim/color.hpp"

#include <array>
#include <utility>

namespace planim {

namespace {

constexpr std::array<std::pair<std::string_view, Rgb>, 12> kNamed{{
    {"red", {0xFF, 0x00, 0x00}},
    {"green", {0x00, 0xFF, 0x00}},
    {"blue", {0x00, 0x00, 0xFF}},
    {"yellow", {0xFF, 0xFF, 0x00}},
    {"orange", {0xFF, 0xA5, 0x00}},
    {"purple", {0x80, 0x00, 0x80}},
    {"cyan", {0x00, 0xFF, 0xFF}},
    {"magenta", {0xFF, 0x00, 0xFF}},
    {"black", {0x00, 0x00, 0x00}},
    {"white", {0xFF, 0xFF, 0xFF}},
    {"gray", {0x80, 0x80, 0x80}},
    {"brown", {0x8B, 0x45, 0x13}},
}};

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::uint8_t scale_06(std::uint8_t c) { return static_cast<std::uint8_t>((c * 6 + 5) / 10); }

}  // namespace

std::string Rgb::hex() const {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string s = "#";
  for (std::uint8_t c : {r, g, b}) {
    s.push_back(kDigits[c >> 4]);
    s.push_back(kDigits[c & 0xF]);
  }
  return s;
}

Rgb Rgb::darkened() const { return {scale_06(r), scale_06(g), scale_06(b)}; }

std::optional<Rgb> parse_hex_color(std::string_view text) {
  if (text.size() != 7 || text[0] != '#') return std::nullopt;
  std::uint8_t ch[3];
  for (int i = 0; i < 3; ++i) {
    int hi = hex_digit(text[1 + 2 * i]);
    int lo = hex_digit(text[2 + 2 * i]);
    if (hi < 0 || lo < 0) return std::nullopt;
    ch[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return Rgb{ch[0], ch[1], ch[2]};
}

std::optional<Rgb> named_color(std::string_view name) {
  for (const auto& [n, c] : kNamed) {
    if (n == name) return c;
  }
  return std::nullopt;
}

std::optional<std::string_view> color_name(Rgb c) {
  for (const auto& [n, v] : kNamed) {
    if (v == c) return n;
  }
  return std::nullopt;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Rgb random_color(std::uint64_t seed, std::string_view object) {
  std::string key = std::to_string(seed) + ":" + std::string(object);
  std::uint64_t h = fnv1a(key);
  h ^= h >> 29;
  return {static_cast<std::uint8_t>(h >> 16), static_cast<std::uint8_t>(h >> 8),
          static_cast<std::uint8_t>(h)};
}

}  // namespace planim
