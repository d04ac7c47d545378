#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "planim/color.hpp"
#include "planim/pddl.hpp"
#include "planim/rational.hpp"

namespace planim::profile {

enum class Property { X, Y, Color, Width, Height, PrefabImage, Depth, ShowName, Label };

inline constexpr Property kAllProperties[] = {
    Property::X,           Property::Y,     Property::Color,    Property::Width, Property::Height,
    Property::PrefabImage, Property::Depth, Property::ShowName, Property::Label};

std::string_view property_name(Property p);
std::optional<Property> parse_property(std::string_view name);

enum class ValueType { Int, NullableInt, Color, Bool, Text, Sprite };

ValueType property_type(Property p);

struct RandomColor {
  bool operator==(const RandomColor&) const = default;
};

/// monostate is the `null` literal.
using Literal = std::variant<std::monostate, std::int64_t, Rgb, RandomColor, bool, std::string>;

/// Sprite ids that need no payload.
bool is_builtin_sprite(std::string_view id);

struct PropertyRef {
  std::string object;  // ?variable, custom object, or problem object
  Property property = Property::X;

  bool operator==(const PropertyRef&) const = default;
};

struct Expr {
  enum class Kind { Literal, Property, Add };

  Kind kind = Kind::Literal;
  Literal literal;
  PropertyRef ref;
  std::vector<Expr> operands;

  bool operator==(const Expr&) const = default;
};

enum class LayoutFunction {
  DistributeX,
  DistributeY,
  DistributeWithinVertical,
  DistributeWithinHorizontal,
  DistributeGridAroundPoint,
  CalculateLabel,
  AlignMiddle,
  ApplySmaller,
  DrawLine,
};

std::string_view function_name(LayoutFunction f);
std::optional<LayoutFunction> parse_function_name(std::string_view name);
/// True for functions whose last object is the container the others are
/// placed relative to.
bool has_container(LayoutFunction f);

using Setting = std::variant<std::int64_t, Rational, Rgb, std::string>;

struct FunctionCall {
  LayoutFunction function = LayoutFunction::DistributeX;
  std::vector<std::string> objects;
  std::map<std::string, Setting> settings;

  bool operator==(const FunctionCall&) const = default;

  std::int64_t int_setting(const std::string& key, std::int64_t fallback) const;
};

struct Effect {
  enum class Kind { Equal, Assign };

  Kind kind = Kind::Equal;
  PropertyRef target;
  Expr expr;          // Equal
  FunctionCall call;  // Assign

  bool operator==(const Effect&) const = default;
};

struct PredicateRule {
  std::string predicate;
  std::vector<std::string> params;
  std::vector<Effect> effects;

  bool operator==(const PredicateRule&) const = default;
};

/// Used for both :objects entries (target = object or type) and :custom
/// entries (target = new visual-only object).
struct ObjectSpec {
  std::string target;
  std::map<Property, Literal> properties;

  bool operator==(const ObjectSpec&) const = default;
};

struct AnimationProfile {
  std::string name;
  std::vector<ObjectSpec> object_specs;
  std::vector<ObjectSpec> custom_objects;
  std::vector<PredicateRule> rules;

  bool operator==(const AnimationProfile&) const = default;

  const PredicateRule* find_rule(std::string_view predicate) const;
  const ObjectSpec* find_custom(std::string_view name) const;
};

AnimationProfile parse_profile(std::string_view source);
std::string to_profile_text(const AnimationProfile& profile);

struct Diagnostic {
  enum class Severity { Error, Warning };

  Severity severity = Severity::Error;
  std::string message;

  auto operator<=>(const Diagnostic&) const = default;
  bool operator==(const Diagnostic&) const = default;

  std::string to_string() const;
};

/// Static cross-check against the domain and problem. Sorted; empty means clean.
std::vector<Diagnostic> check_profile(const AnimationProfile& profile, const pddl::DomainAst& domain,
                                      const pddl::ProblemAst& problem);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace planim::profile
