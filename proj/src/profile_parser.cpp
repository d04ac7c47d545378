#include <algorithm>
#include <cstdint>
#include <cctype>
#include <charconv>

#include "planim/profile.hpp"
#include "planim/sexpr.hpp"

namespace planim::profile {

namespace {

[[noreturn]] void fail(const std::string& message, const SExpr& at) { throw ParseError(message, at.loc); }

const std::string& expect_symbol(const SExpr& e, std::string_view what) {
  if (!e.is_symbol()) fail("expected " + std::string(what), e);
  return e.text;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

Literal parse_color_literal(const SExpr& e) {
  const std::string& text = expect_symbol(e, "color");
  if (text == "random") return RandomColor{};
  if (auto c = named_color(text)) return *c;
  if (!text.empty() && text.front() == '#') {
    if (auto c = parse_hex_color(text)) return *c;
    fail("malformed hex color '" + text + "'", e);
  }
  fail("unknown color '" + text + "'", e);
}

/// Literal for a slot of type `type`.
Literal parse_literal(const SExpr& e, ValueType type, std::string_view what) {
  switch (type) {
    case ValueType::Int:
    case ValueType::NullableInt: {
      const std::string& text = expect_symbol(e, "integer for " + std::string(what));
      if (type == ValueType::NullableInt && text == "null") return std::monostate{};
      if (auto v = parse_int(text)) return Literal(std::in_place_type<std::int64_t>, *v);
      fail("expected integer for " + std::string(what) + ", got '" + text + "'", e);
    }
    case ValueType::Color:
      return parse_color_literal(e);
    case ValueType::Bool: {
      const std::string& text = expect_symbol(e, "boolean");
      if (text == "true") return Literal(std::in_place_type<bool>, true);
      if (text == "false") return Literal(std::in_place_type<bool>, false);
      fail("expected true or false for " + std::string(what) + ", got '" + text + "'", e);
    }
    case ValueType::Text:
      if (e.is_list()) fail("expected text for " + std::string(what), e);
      return e.text;
    case ValueType::Sprite:
      if (e.is_string()) return e.text;
      if (e.is_symbol() && is_builtin_sprite(e.text)) return e.text;
      fail("expected a base64 string or built-in sprite for " + std::string(what), e);
  }
  fail("unreachable", e);
}

Property expect_property(const SExpr& e) {
  const std::string& name = expect_symbol(e, "property name");
  auto p = parse_property(name);
  if (!p) fail("unknown property '" + name + "'", e);
  return *p;
}

PropertyRef parse_ref(const SExpr& e) {
  if (!e.is_list() || e.items.size() != 2) fail("expected (<object> <property>)", e);
  PropertyRef ref;
  ref.object = expect_symbol(e.items[0], "object reference");
  ref.property = expect_property(e.items[1]);
  return ref;
}

bool ref_compatible(ValueType want, ValueType have) {
  auto is_int = [](ValueType t) { return t == ValueType::Int || t == ValueType::NullableInt; };
  if (is_int(want)) return is_int(have);
  return want == have;
}

Expr parse_expr(const SExpr& e, ValueType want, std::string_view what) {
  Expr expr;
  if (e.is_form("add")) {
    if (want != ValueType::Int && want != ValueType::NullableInt) {
      fail("add produces an integer, " + std::string(what) + " is not numeric", e);
    }
    if (e.items.size() < 3) fail("add takes at least two operands", e);
    expr.kind = Expr::Kind::Add;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      expr.operands.push_back(parse_expr(e.items[i], ValueType::Int, "add operand"));
    }
    return expr;
  }
  if (e.is_list()) {
    if (!e.items.empty() && e.items[0].is_symbol() && !e.items[0].text.empty() &&
        e.items[0].text.front() != '?' && e.items.size() != 2) {
      fail("unsupported operator '" + e.items[0].text + "'", e);
    }
    expr.kind = Expr::Kind::Property;
    expr.ref = parse_ref(e);
    if (!ref_compatible(want, property_type(expr.ref.property))) {
      fail("property '" + std::string(property_name(expr.ref.property)) +
               "' has the wrong type for " + std::string(what),
           e);
    }
    return expr;
  }
  expr.kind = Expr::Kind::Literal;
  expr.literal = parse_literal(e, want, what);
  return expr;
}

Setting parse_setting(const SExpr& e) {
  if (e.is_string()) return e.text;
  const std::string& text = expect_symbol(e, "setting value");
  if (auto v = parse_int(text)) return Setting(std::in_place_type<std::int64_t>, *v);
  if (text.find('.') != std::string::npos) {
    if (auto r = Rational::parse_decimal(text)) return *r;
    fail("malformed number '" + text + "'", e);
  }
  if (auto c = named_color(text)) return *c;
  if (!text.empty() && text.front() == '#') {
    if (auto c = parse_hex_color(text)) return *c;
    fail("malformed hex color '" + text + "'", e);
  }
  return text;
}

void require_int_setting(const FunctionCall& call, const std::string& key, bool required,
                         std::int64_t min, const SExpr& at) {
  auto it = call.settings.find(key);
  if (it == call.settings.end()) {
    if (required) {
      fail("malformed settings: " + std::string(function_name(call.function)) + " requires '" +
               key + "'",
           at);
    }
    return;
  }
  const auto* v = std::get_if<std::int64_t>(&it->second);
  if (!v) fail("malformed settings: '" + key + "' must be an integer", at);
  if (*v < min) {
    fail("malformed settings: '" + key + "' must be at least " + std::to_string(min), at);
  }
}

void validate_call(const FunctionCall& call, const PropertyRef& target, const SExpr& at) {
  const std::string fname(function_name(call.function));
  std::vector<std::string> allowed;
  std::size_t min_objects = 1;
  std::size_t max_objects = SIZE_MAX;
  std::vector<Property> targets;
  switch (call.function) {
    case LayoutFunction::DistributeX:
    case LayoutFunction::DistributeY:
      allowed = {"spacebtwn"};
      require_int_setting(call, "spacebtwn", true, 0, at);
      targets = {call.function == LayoutFunction::DistributeX ? Property::X : Property::Y};
      break;
    case LayoutFunction::DistributeWithinVertical:
    case LayoutFunction::DistributeWithinHorizontal:
    case LayoutFunction::AlignMiddle:
      min_objects = 2;
      targets = {Property::X, Property::Y};
      break;
    case LayoutFunction::DistributeGridAroundPoint:
      allowed = {"x", "y", "spacebtwn", "columns"};
      require_int_setting(call, "x", true, INT64_MIN, at);
      require_int_setting(call, "y", true, INT64_MIN, at);
      require_int_setting(call, "spacebtwn", true, 0, at);
      require_int_setting(call, "columns", false, 1, at);
      targets = {Property::X, Property::Y};
      break;
    case LayoutFunction::CalculateLabel:
      targets = {Property::Label};
      break;
    case LayoutFunction::ApplySmaller: {
      allowed = {"scale"};
      targets = {Property::Width, Property::Height};
      auto it = call.settings.find("scale");
      if (it != call.settings.end()) {
        Rational scale;
        if (const auto* r = std::get_if<Rational>(&it->second)) {
          scale = *r;
        } else if (const auto* i = std::get_if<std::int64_t>(&it->second)) {
          scale = {*i, 1};
        } else {
          fail("malformed settings: 'scale' must be a number", at);
        }
        if (scale.num <= 0 || scale.num >= scale.den) {
          fail("scale out of range: " + scale.to_string() + " (expected 0 < scale < 1)", at);
        }
      }
      break;
    }
    case LayoutFunction::DrawLine: {
      allowed = {"color"};
      min_objects = max_objects = 2;
      auto it = call.settings.find("color");
      if (it != call.settings.end() && !std::holds_alternative<Rgb>(it->second)) {
        fail("malformed settings: 'color' must be a color", at);
      }
      break;
    }
  }
  for (const auto& [key, value] : call.settings) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail("malformed settings: " + fname + " has no setting '" + key + "'", at);
    }
  }
  if (call.objects.size() < min_objects || call.objects.size() > max_objects) {
    fail(fname + ": wrong number of objects (" + std::to_string(call.objects.size()) + ")", at);
  }
  if (!targets.empty() &&
      std::find(targets.begin(), targets.end(), target.property) == targets.end()) {
    fail(fname + " cannot be assigned to property '" +
             std::string(property_name(target.property)) + "'",
         at);
  }
}

FunctionCall parse_call(const SExpr& e, const PropertyRef& target) {
  if (!e.is_form("function") || e.items.size() < 2) fail("expected (function <name> ...)", e);
  const std::string& name = expect_symbol(e.items[1], "function name");
  auto fn = parse_function_name(name);
  if (!fn) fail("unknown function '" + name + "'", e.items[1]);
  FunctionCall call;
  call.function = *fn;
  bool seen_objects = false;
  for (std::size_t i = 2; i < e.items.size(); ++i) {
    const SExpr& part = e.items[i];
    if (part.is_form("objects") && !seen_objects) {
      seen_objects = true;
      for (std::size_t k = 1; k < part.items.size(); ++k) {
        call.objects.push_back(expect_symbol(part.items[k], "object reference"));
      }
    } else if (part.is_form("settings")) {
      for (std::size_t k = 1; k < part.items.size(); ++k) {
        const SExpr& kv = part.items[k];
        if (!kv.is_list() || kv.items.size() != 2) fail("malformed settings entry", kv);
        const std::string& key = expect_symbol(kv.items[0], "setting name");
        if (!call.settings.emplace(key, parse_setting(kv.items[1])).second) {
          fail("malformed settings: duplicate '" + key + "'", kv);
        }
      }
    } else {
      fail("expected (objects ...) or (settings ...)", part);
    }
  }
  validate_call(call, target, e);
  return call;
}

Effect parse_effect(const SExpr& e) {
  Effect effect;
  if (e.is_form("equal")) {
    if (e.items.size() != 3) fail("equal takes a target and an expression", e);
    effect.kind = Effect::Kind::Equal;
    effect.target = parse_ref(e.items[1]);
    effect.expr = parse_expr(e.items[2], property_type(effect.target.property),
                             property_name(effect.target.property));
    return effect;
  }
  if (e.is_form("assign")) {
    if (e.items.size() != 3) fail("assign takes a target and a function call", e);
    effect.kind = Effect::Kind::Assign;
    effect.target = parse_ref(e.items[1]);
    effect.call = parse_call(e.items[2], effect.target);
    return effect;
  }
  fail("expected (equal ...) or (assign ...)", e);
}

ObjectSpec parse_spec(const SExpr& e) {
  if (!e.is_list() || e.items.empty()) fail("expected (<name> (:property value) ...)", e);
  ObjectSpec spec;
  spec.target = expect_symbol(e.items[0], "object, type or custom name");
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& kv = e.items[i];
    if (!kv.is_list() || kv.items.size() != 2 || !kv.items[0].is_symbol() ||
        kv.items[0].text.empty() || kv.items[0].text.front() != ':') {
      fail("expected (:property value)", kv);
    }
    const std::string key = kv.items[0].text.substr(1);
    auto prop = parse_property(key);
    if (!prop) fail("unknown property '" + key + "'", kv.items[0]);
    Literal value = parse_literal(kv.items[1], property_type(*prop), key);
    if ((*prop == Property::Width || *prop == Property::Height) &&
        std::get<std::int64_t>(value) <= 0) {
      fail(key + " must be positive", kv.items[1]);
    }
    if (!spec.properties.emplace(*prop, std::move(value)).second) {
      fail("property '" + key + "' given twice", kv);
    }
  }
  return spec;
}

PredicateRule parse_rule(const SExpr& e) {
  if (e.items.size() < 2) fail("expected (:predicate <name> ...)", e);
  PredicateRule rule;
  rule.predicate = expect_symbol(e.items[1], "predicate name");
  std::size_t i = 2;
  while (i < e.items.size()) {
    const std::string& key = expect_symbol(e.items[i], ":parameters or :effects");
    if (key == ":parameters") {
      if (i + 1 >= e.items.size() || !e.items[i + 1].is_list()) {
        fail("expected a parameter list", e.items[i]);
      }
      for (const SExpr& v : e.items[i + 1].items) {
        const std::string& name = expect_symbol(v, "?variable");
        if (name.empty() || name.front() != '?') fail("expected a ?variable, got '" + name + "'", v);
        if (std::find(rule.params.begin(), rule.params.end(), name) != rule.params.end()) {
          fail("duplicate parameter '" + name + "'", v);
        }
        rule.params.push_back(name);
      }
      i += 2;
    } else if (key == ":effects") {
      ++i;
      std::vector<const SExpr*> effects;
      for (; i < e.items.size(); ++i) {
        const SExpr& item = e.items[i];
        if (item.is_form("and")) {
          for (std::size_t k = 1; k < item.items.size(); ++k) effects.push_back(&item.items[k]);
        } else if (item.is_list() && item.items.empty()) {
          continue;
        } else {
          effects.push_back(&item);
        }
      }
      for (const SExpr* eff : effects) rule.effects.push_back(parse_effect(*eff));
    } else {
      fail("unexpected '" + key + "' in predicate rule", e.items[i]);
    }
  }
  return rule;
}

}  // namespace

std::string_view property_name(Property p) {
  switch (p) {
    case Property::X: return "x";
    case Property::Y: return "y";
    case Property::Color: return "color";
    case Property::Width: return "width";
    case Property::Height: return "height";
    case Property::PrefabImage: return "prefabImage";
    case Property::Depth: return "depth";
    case Property::ShowName: return "showname";
    case Property::Label: return "label";
  }
  return "";
}

std::optional<Property> parse_property(std::string_view name) {
  const std::string lower = to_lower(name);
  for (Property p : kAllProperties) {
    if (to_lower(property_name(p)) == lower) return p;
  }
  return std::nullopt;
}

ValueType property_type(Property p) {
  switch (p) {
    case Property::X:
    case Property::Y: return ValueType::NullableInt;
    case Property::Width:
    case Property::Height:
    case Property::Depth: return ValueType::Int;
    case Property::Color: return ValueType::Color;
    case Property::ShowName: return ValueType::Bool;
    case Property::Label: return ValueType::Text;
    case Property::PrefabImage: return ValueType::Sprite;
  }
  return ValueType::Int;
}

bool is_builtin_sprite(std::string_view id) { return id == "rectangle" || id == "ellipse"; }

std::string_view function_name(LayoutFunction f) {
  switch (f) {
    case LayoutFunction::DistributeX: return "distributex";
    case LayoutFunction::DistributeY: return "distributey";
    case LayoutFunction::DistributeWithinVertical: return "distribute_within_objects_vertical";
    case LayoutFunction::DistributeWithinHorizontal: return "distribute_within_objects_horizontal";
    case LayoutFunction::DistributeGridAroundPoint: return "distribute_grid_around_point";
    case LayoutFunction::CalculateLabel: return "calculate_label";
    case LayoutFunction::AlignMiddle: return "align_middle";
    case LayoutFunction::ApplySmaller: return "apply_smaller";
    case LayoutFunction::DrawLine: return "draw_line";
  }
  return "";
}

std::optional<LayoutFunction> parse_function_name(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(LayoutFunction::DrawLine); ++i) {
    auto f = static_cast<LayoutFunction>(i);
    if (function_name(f) == name) return f;
  }
  return std::nullopt;
}

bool has_container(LayoutFunction f) {
  return f == LayoutFunction::DistributeWithinVertical ||
         f == LayoutFunction::DistributeWithinHorizontal || f == LayoutFunction::AlignMiddle;
}

std::int64_t FunctionCall::int_setting(const std::string& key, std::int64_t fallback) const {
  auto it = settings.find(key);
  if (it == settings.end()) return fallback;
  if (const auto* v = std::get_if<std::int64_t>(&it->second)) return *v;
  return fallback;
}

const PredicateRule* AnimationProfile::find_rule(std::string_view predicate) const {
  for (const auto& r : rules) {
    if (r.predicate == predicate) return &r;
  }
  return nullptr;
}

const ObjectSpec* AnimationProfile::find_custom(std::string_view n) const {
  for (const auto& c : custom_objects) {
    if (c.target == n) return &c;
  }
  return nullptr;
}

AnimationProfile parse_profile(std::string_view source) {
  const SExpr top = read_single_sexpr(source);
  if (!top.is_form("define") || top.items.size() < 2) {
    fail("expected (define (animation <name>) ...)", top);
  }
  const SExpr& head = top.items[1];
  if (!head.is_form("animation") || head.items.size() != 2) fail("expected (animation <name>)", head);

  AnimationProfile profile;
  profile.name = expect_symbol(head.items[1], "animation name");
  for (std::size_t i = 2; i < top.items.size(); ++i) {
    const SExpr& section = top.items[i];
    if (section.is_form(":objects")) {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        profile.object_specs.push_back(parse_spec(section.items[k]));
      }
    } else if (section.is_form(":custom")) {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        ObjectSpec spec = parse_spec(section.items[k]);
        if (spec.target == "add" || spec.target.front() == '?') {
          fail("reserved custom object name '" + spec.target + "'", section.items[k]);
        }
        if (profile.find_custom(spec.target)) {
          fail("custom object '" + spec.target + "' declared twice", section.items[k]);
        }
        profile.custom_objects.push_back(std::move(spec));
      }
    } else if (section.is_form(":predicate")) {
      PredicateRule rule = parse_rule(section);
      if (profile.find_rule(rule.predicate)) {
        fail("second rule for predicate '" + rule.predicate + "'", section);
      }
      profile.rules.push_back(std::move(rule));
    } else {
      fail("expected (:objects ...), (:custom ...) or (:predicate ...)", section);
    }
  }
  return profile;
}

}  // namespace planim::profile
