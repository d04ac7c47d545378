#include "planim/layout.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace planim::layout {

using profile::LayoutFunction;
using profile::Property;

namespace {

const VisualObject& lookup(const ObjectTable& scene, const std::string& name) {
  auto it = scene.find(name);
  if (it == scene.end()) throw std::out_of_range("unknown object '" + name + "'");
  return it->second;
}

Value int_value(std::int64_t v) { return Value(std::in_place_type<std::int64_t>, v); }

bool is_variable(const std::string& ref) { return !ref.empty() && ref.front() == '?'; }

std::int64_t ceil_sqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r < n) ++r;
  while (r > 1 && (r - 1) * (r - 1) >= n) --r;
  return std::max<std::int64_t>(r, 1);
}

std::int64_t centre(std::int64_t pos, std::int64_t size) { return round_half_up(2 * pos + size, 2); }

}  // namespace

void LayoutResult::append(LayoutResult&& other) {
  writes.insert(writes.end(), std::make_move_iterator(other.writes.begin()),
                std::make_move_iterator(other.writes.end()));
  lines.insert(lines.end(), std::make_move_iterator(other.lines.begin()),
               std::make_move_iterator(other.lines.end()));
  pending.insert(pending.end(), std::make_move_iterator(other.pending.begin()),
                 std::make_move_iterator(other.pending.end()));
}

FunctionInvocation resolve_objects(const profile::FunctionCall& call,
                                   const profile::PropertyRef& target,
                                   const profile::PredicateRule& rule,
                                   const pddl::AtomSet& state) {
  FunctionInvocation inv;
  inv.call = call;
  inv.target = target;
  inv.predicate = rule.predicate;

  const bool container = profile::has_container(call.function);
  const bool shared =
      !container && is_variable(target.object) &&
      std::find(call.objects.begin(), call.objects.end(), target.object) != call.objects.end();

  auto lo = state.lower_bound(pddl::GroundAtom{rule.predicate, {}});
  for (auto it = lo; it != state.end() && it->predicate == rule.predicate; ++it) {
    if (it->args.size() != rule.params.size()) continue;
    auto bind = [&](const std::string& ref) -> const std::string& {
      if (!is_variable(ref)) return ref;
      for (std::size_t i = 0; i < rule.params.size(); ++i) {
        if (rule.params[i] == ref) return it->args[i];
      }
      throw std::out_of_range("variable '" + ref + "' is not a parameter of rule '" +
                              rule.predicate + "'");
    };
    std::vector<std::string> bound;
    bound.reserve(call.objects.size());
    for (const auto& ref : call.objects) bound.push_back(bind(ref));

    std::string key;
    std::size_t member_count = bound.size();
    if (container) {
      key = bound.back();
      --member_count;
    } else if (!shared) {
      key = bind(target.object);
    }
    auto& members = inv.groups[key];
    members.insert(members.end(), bound.begin(), bound.begin() + static_cast<long>(member_count));
    inv.bindings.push_back(std::move(bound));
  }
  for (auto& [key, members] : inv.groups) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
  }
  std::sort(inv.bindings.begin(), inv.bindings.end());
  inv.bindings.erase(std::unique(inv.bindings.begin(), inv.bindings.end()), inv.bindings.end());
  return inv;
}

namespace {

LayoutResult distribute_along(std::span<const std::string> group, std::int64_t spacing,
                              const ObjectTable& scene, Property coord) {
  LayoutResult out;
  std::int64_t pos = 0;
  for (const auto& name : group) {
    const VisualObject& obj = lookup(scene, name);
    out.writes.push_back({name, coord, int_value(pos)});
    pos += (coord == Property::X ? obj.width : obj.height) + spacing;
  }
  return out;
}

}  // namespace

LayoutResult distribute_x(std::span<const std::string> group, std::int64_t spacing,
                          const ObjectTable& scene) {
  return distribute_along(group, spacing, scene, Property::X);
}

LayoutResult distribute_y(std::span<const std::string> group, std::int64_t spacing,
                          const ObjectTable& scene) {
  return distribute_along(group, spacing, scene, Property::Y);
}

LayoutResult distribute_within(std::span<const std::string> group, const std::string& container,
                               Axis axis, const ObjectTable& scene) {
  LayoutResult out;
  const VisualObject& box = lookup(scene, container);
  if (!box.visible()) {
    out.pending.push_back(container);
    return out;
  }
  const auto n = static_cast<std::int64_t>(group.size());
  const bool horizontal = axis == Axis::Horizontal;
  const std::int64_t main_pos = horizontal ? *box.x : *box.y;
  const std::int64_t main_len = horizontal ? box.width : box.height;
  const std::int64_t cross_pos = horizontal ? *box.y : *box.x;
  const std::int64_t cross_len = horizontal ? box.height : box.width;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::string& name = group[static_cast<std::size_t>(i)];
    const VisualObject& obj = lookup(scene, name);
    const std::int64_t own_main = horizontal ? obj.width : obj.height;
    const std::int64_t own_cross = horizontal ? obj.height : obj.width;
    // main = pos + (i + 1/2) * len / n - own / 2
    std::int64_t m = round_half_up(2 * n * main_pos + (2 * i + 1) * main_len - n * own_main, 2 * n);
    std::int64_t c = round_half_up(2 * cross_pos + cross_len - own_cross, 2);
    out.writes.push_back({name, Property::X, int_value(horizontal ? m : c)});
    out.writes.push_back({name, Property::Y, int_value(horizontal ? c : m)});
  }
  return out;
}

LayoutResult distribute_grid_around_point(std::span<const std::string> group,
                                          const GridSettings& settings, const ObjectTable& scene) {
  LayoutResult out;
  const auto n = static_cast<std::int64_t>(group.size());
  if (n == 0) return out;
  const std::int64_t cols = settings.columns.value_or(ceil_sqrt(n));
  std::int64_t max_w = 0;
  std::int64_t max_h = 0;
  for (const auto& name : group) {
    const VisualObject& obj = lookup(scene, name);
    max_w = std::max(max_w, obj.width);
    max_h = std::max(max_h, obj.height);
  }
  const std::int64_t pitch_x = max_w + settings.spacing;
  const std::int64_t pitch_y = max_h + settings.spacing;
  std::int64_t col_sum = 0;
  std::int64_t row_sum = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    col_sum += i % cols;
    row_sum += i / cols;
  }
  for (std::int64_t i = 0; i < n; ++i) {
    const std::string& name = group[static_cast<std::size_t>(i)];
    const VisualObject& obj = lookup(scene, name);
    const std::int64_t col = i % cols;
    const std::int64_t row = i / cols;
    // centre = point + (index - mean index) * pitch; rows grow downward.
    std::int64_t x = round_half_up(
        2 * n * settings.x + 2 * (col * n - col_sum) * pitch_x - n * obj.width, 2 * n);
    std::int64_t y = round_half_up(
        2 * n * settings.y - 2 * (row * n - row_sum) * pitch_y - n * obj.height, 2 * n);
    out.writes.push_back({name, Property::X, int_value(x)});
    out.writes.push_back({name, Property::Y, int_value(y)});
  }
  return out;
}

LayoutResult calculate_label(const std::map<std::string, std::vector<std::string>>& groups) {
  LayoutResult out;
  for (const auto& [key, members] : groups) {
    const std::string count = std::to_string(members.size());
    if (key == kSharedGroup) {
      for (const auto& m : members) out.writes.push_back({m, Property::Label, count});
    } else {
      out.writes.push_back({key, Property::Label, count});
    }
  }
  return out;
}

LayoutResult align_middle(const std::string& object, const std::string& container,
                          const ObjectTable& scene) {
  LayoutResult out;
  const VisualObject& box = lookup(scene, container);
  if (!box.visible()) {
    out.pending.push_back(container);
    return out;
  }
  const VisualObject& obj = lookup(scene, object);
  out.writes.push_back(
      {object, Property::X, int_value(round_half_up(2 * *box.x + box.width - obj.width, 2))});
  out.writes.push_back(
      {object, Property::Y, int_value(round_half_up(2 * *box.y + box.height - obj.height, 2))});
  return out;
}

LayoutResult apply_smaller(const std::string& object, Rational scale, const ObjectTable& base) {
  if (scale.den <= 0 || scale.num <= 0 || scale.num >= scale.den) {
    throw std::invalid_argument("apply_smaller: scale out of range: " + scale.to_string());
  }
  const VisualObject& obj = lookup(base, object);
  LayoutResult out;
  out.writes.push_back(
      {object, Property::Width,
       int_value(std::max<std::int64_t>(1, round_half_up(scale.num * obj.width, scale.den)))});
  out.writes.push_back(
      {object, Property::Height,
       int_value(std::max<std::int64_t>(1, round_half_up(scale.num * obj.height, scale.den)))});
  return out;
}

LayoutResult draw_line(const std::string& from, const std::string& to, Rgb color,
                       const ObjectTable& scene) {
  LayoutResult out;
  const VisualObject& a = lookup(scene, from);
  const VisualObject& b = lookup(scene, to);
  if (!a.visible()) out.pending.push_back(from);
  if (!b.visible() && to != from) out.pending.push_back(to);
  if (!out.pending.empty()) return out;
  out.lines.push_back({from, to, color, centre(*a.x, a.width), centre(*a.y, a.height),
                       centre(*b.x, b.width), centre(*b.y, b.height)});
  return out;
}

LayoutResult evaluate(const FunctionInvocation& inv, const ObjectTable& scene,
                      const ObjectTable& base) {
  LayoutResult out;
  const profile::FunctionCall& call = inv.call;
  switch (call.function) {
    case LayoutFunction::DistributeX:
    case LayoutFunction::DistributeY: {
      const std::int64_t spacing = call.int_setting("spacebtwn", 0);
      for (const auto& [key, members] : inv.groups) {
        out.append(call.function == LayoutFunction::DistributeX
                       ? distribute_x(members, spacing, scene)
                       : distribute_y(members, spacing, scene));
      }
      break;
    }
    case LayoutFunction::DistributeWithinHorizontal:
    case LayoutFunction::DistributeWithinVertical: {
      const Axis axis = call.function == LayoutFunction::DistributeWithinHorizontal
                            ? Axis::Horizontal
                            : Axis::Vertical;
      for (const auto& [container, members] : inv.groups) {
        out.append(distribute_within(members, container, axis, scene));
      }
      break;
    }
    case LayoutFunction::DistributeGridAroundPoint: {
      GridSettings settings{call.int_setting("x", 0), call.int_setting("y", 0),
                            call.int_setting("spacebtwn", 0), std::nullopt};
      if (call.settings.count("columns")) settings.columns = call.int_setting("columns", 1);
      for (const auto& [key, members] : inv.groups) {
        out.append(distribute_grid_around_point(members, settings, scene));
      }
      break;
    }
    case LayoutFunction::CalculateLabel:
      out.append(calculate_label(inv.groups));
      break;
    case LayoutFunction::AlignMiddle:
      for (const auto& [container, members] : inv.groups) {
        for (const auto& m : members) out.append(align_middle(m, container, scene));
      }
      break;
    case LayoutFunction::ApplySmaller: {
      Rational scale = kDefaultSmallerScale;
      if (auto it = call.settings.find("scale"); it != call.settings.end()) {
        if (const auto* r = std::get_if<Rational>(&it->second)) scale = *r;
      }
      for (const auto& [key, members] : inv.groups) {
        for (const auto& m : members) out.append(apply_smaller(m, scale, base));
      }
      break;
    }
    case LayoutFunction::DrawLine: {
      Rgb color = kDefaultLineColor;
      if (auto it = call.settings.find("color"); it != call.settings.end()) {
        if (const auto* c = std::get_if<Rgb>(&it->second)) color = *c;
      }
      for (const auto& b : inv.bindings) out.append(draw_line(b[0], b[1], color, scene));
      break;
    }
  }
  return out;
}

}  // namespace planim::layout
