#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "planim/pddl.hpp"
#include "planim/profile.hpp"
#include "planim/rational.hpp"
#include "planim/visual.hpp"

namespace planim::layout {

/// The objects one `assign` governs in one state.
///
/// Instantiations of the rule's predicate are grouped by the binding of the
/// assign target's variable. If that variable is also one of the call's
/// object variables, every instantiation lands in one shared group (key "").
/// Container functions (distribute_within_objects_*, align_middle) group by
/// the container binding instead: the last object is the container and the
/// rest are members.
struct FunctionInvocation {
  profile::FunctionCall call;
  profile::PropertyRef target;
  std::string predicate;
  /// key -> members, deduplicated and sorted by name.
  std::map<std::string, std::vector<std::string>> groups;
  /// Per-instantiation bound objects in call order; sorted, unique. Used by
  /// draw_line, which acts on each instantiation separately.
  std::vector<std::vector<std::string>> bindings;

  bool operator==(const FunctionInvocation&) const = default;
};

inline constexpr const char* kSharedGroup = "";

FunctionInvocation resolve_objects(const profile::FunctionCall& call,
                                   const profile::PropertyRef& target,
                                   const profile::PredicateRule& rule, const pddl::AtomSet& state);

struct LayoutResult {
  std::vector<PropertyWrite> writes;
  std::vector<LineElement> lines;
  /// Objects whose unresolved position blocked part of the result. Those
  /// parts are left out and should be retried once the objects resolve.
  std::vector<std::string> pending;

  void append(LayoutResult&& other);
};

enum class Axis { Horizontal, Vertical };

/// x0 = 0, x(i+1) = x(i) + width(i) + spacing, in group order.
LayoutResult distribute_x(std::span<const std::string> group, std::int64_t spacing,
                          const ObjectTable& scene);
LayoutResult distribute_y(std::span<const std::string> group, std::int64_t spacing,
                          const ObjectTable& scene);

/// Places the group at the centres of n equal slots across the container
/// (along `axis`) and centres each one on the other axis.
LayoutResult distribute_within(std::span<const std::string> group, const std::string& container,
                               Axis axis, const ObjectTable& scene);

struct GridSettings {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t spacing = 0;
  std::optional<std::int64_t> columns;
};

/// Row-major grid, first row on top. Cell pitch is the largest member size
/// plus spacing. The centroid of the occupied cell centres sits on (x, y).
LayoutResult distribute_grid_around_point(std::span<const std::string> group,
                                          const GridSettings& settings, const ObjectTable& scene);

/// label = decimal size of each group. Shared groups label every member.
LayoutResult calculate_label(const std::map<std::string, std::vector<std::string>>& groups);

LayoutResult align_middle(const std::string& object, const std::string& container,
                          const ObjectTable& scene);

inline constexpr Rational kDefaultSmallerScale{8, 10};

/// Scales the object's base (profile) size, so repeating it is harmless.
LayoutResult apply_smaller(const std::string& object, Rational scale, const ObjectTable& base);

inline constexpr Rgb kDefaultLineColor{0, 0, 0};

/// Line between the two objects' centres.
LayoutResult draw_line(const std::string& from, const std::string& to, Rgb color,
                       const ObjectTable& scene);

/// Runs the invocation's function over every group.
LayoutResult evaluate(const FunctionInvocation& invocation, const ObjectTable& scene,
                      const ObjectTable& base);

}  // namespace planim::layout
