#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "planim/color.hpp"
#include "planim/profile.hpp"

namespace planim {

inline constexpr Rgb kDefaultColor{0x80, 0x80, 0x80};
inline constexpr std::int64_t kDefaultSize = 40;

/// Resolved visual properties of one canvas object. Coordinates are canvas
/// units with the origin at the bottom-left and y growing upward; (x, y) is
/// the object's bottom-left corner.
struct VisualObject {
  std::optional<std::int64_t> x;
  std::optional<std::int64_t> y;
  std::int64_t width = kDefaultSize;
  std::int64_t height = kDefaultSize;
  Rgb color = kDefaultColor;
  std::string sprite = "rectangle";
  std::int64_t depth = 0;
  bool showname = true;
  std::string label;

  bool operator==(const VisualObject&) const = default;

  bool visible() const { return x.has_value() && y.has_value(); }
};

using ObjectTable = std::map<std::string, VisualObject>;

/// Resolved property value; monostate is null.
using Value = std::variant<std::monostate, std::int64_t, Rgb, bool, std::string>;

Value get_property(const VisualObject& obj, profile::Property p);
/// Throws std::invalid_argument when `v` has the wrong type for `p`.
void set_property(VisualObject& obj, profile::Property p, const Value& v);
std::string value_to_string(const Value& v);

struct LineElement {
  std::string from;
  std::string to;
  Rgb color;
  std::int64_t x1 = 0;
  std::int64_t y1 = 0;
  std::int64_t x2 = 0;
  std::int64_t y2 = 0;

  auto operator<=>(const LineElement&) const = default;
  bool operator==(const LineElement&) const = default;
};

struct PropertyWrite {
  std::string object;
  profile::Property property;
  Value value;

  bool operator==(const PropertyWrite&) const = default;
};

}  // namespace planim
