#include "planim/visual.hpp"

#include <stdexcept>

namespace planim {

using profile::Property;

Value get_property(const VisualObject& obj, Property p) {
  auto opt = [](const std::optional<std::int64_t>& v) -> Value {
    if (v) return Value(std::in_place_type<std::int64_t>, *v);
    return std::monostate{};
  };
  switch (p) {
    case Property::X: return opt(obj.x);
    case Property::Y: return opt(obj.y);
    case Property::Width: return Value(std::in_place_type<std::int64_t>, obj.width);
    case Property::Height: return Value(std::in_place_type<std::int64_t>, obj.height);
    case Property::Depth: return Value(std::in_place_type<std::int64_t>, obj.depth);
    case Property::Color: return obj.color;
    case Property::ShowName: return Value(std::in_place_type<bool>, obj.showname);
    case Property::Label: return obj.label;
    case Property::PrefabImage: return obj.sprite;
  }
  return std::monostate{};
}

void set_property(VisualObject& obj, Property p, const Value& v) {
  auto bad = [&]() {
    return std::invalid_argument("value " + value_to_string(v) + " does not fit property " +
                                 std::string(profile::property_name(p)));
  };
  const auto* i = std::get_if<std::int64_t>(&v);
  switch (p) {
    case Property::X:
    case Property::Y: {
      std::optional<std::int64_t> nv;
      if (i) {
        nv = *i;
      } else if (!std::holds_alternative<std::monostate>(v)) {
        throw bad();
      }
      (p == Property::X ? obj.x : obj.y) = nv;
      return;
    }
    case Property::Width:
    case Property::Height:
      if (!i || *i <= 0) throw bad();
      (p == Property::Width ? obj.width : obj.height) = *i;
      return;
    case Property::Depth:
      if (!i) throw bad();
      obj.depth = *i;
      return;
    case Property::Color:
      if (const auto* c = std::get_if<Rgb>(&v)) {
        obj.color = *c;
        return;
      }
      throw bad();
    case Property::ShowName:
      if (const auto* b = std::get_if<bool>(&v)) {
        obj.showname = *b;
        return;
      }
      throw bad();
    case Property::Label:
    case Property::PrefabImage:
      if (const auto* s = std::get_if<std::string>(&v)) {
        (p == Property::Label ? obj.label : obj.sprite) = *s;
        return;
      }
      throw bad();
  }
}

std::string value_to_string(const Value& v) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(Rgb c) const { return c.hex(); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return "\"" + s + "\""; }
  };
  return std::visit(Visitor{}, v);
}

}  // namespace planim
