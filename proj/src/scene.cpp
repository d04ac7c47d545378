#include "planim/scene.hpp"

#include <algorithm>
#include <cstdio>

#include "planim/layout.hpp"

namespace planim::scene {

using profile::Effect;
using profile::Expr;
using profile::Property;

namespace {

std::string format_instance(const profile::PredicateRule& rule, const pddl::GroundAtom& atom) {
  return "rule " + rule.predicate + " on " + atom.to_string();
}

bool is_variable(const std::string& ref) { return !ref.empty() && ref.front() == '?'; }

/// One (object, property) write collected during an iteration.
struct PendingWrite {
  Value value;
  std::string source;
};

using WriteKey = std::pair<std::string, Property>;

class WriteSet {
 public:
  void add(const std::string& object, Property prop, Value value, const std::string& source) {
    auto [it, fresh] = writes_.try_emplace({object, prop}, PendingWrite{value, source});
    if (!fresh && it->second.value != value) {
      throw SceneError(SceneError::Kind::Conflict,
                       "conflicting writes to " + object + "." +
                           std::string(profile::property_name(prop)) + ": " +
                           value_to_string(it->second.value) + " from " + it->second.source +
                           ", " + value_to_string(value) + " from " + source);
    }
  }

  const std::map<WriteKey, PendingWrite>& writes() const { return writes_; }

 private:
  std::map<WriteKey, PendingWrite> writes_;
};

Value literal_value(const profile::Literal& lit, std::uint64_t seed, const std::string& object) {
  struct Visitor {
    std::uint64_t seed;
    const std::string& object;
    Value operator()(std::monostate) const { return std::monostate{}; }
    Value operator()(std::int64_t v) const { return Value(std::in_place_type<std::int64_t>, v); }
    Value operator()(Rgb c) const { return c; }
    Value operator()(profile::RandomColor) const { return random_color(seed, object); }
    Value operator()(bool b) const { return Value(std::in_place_type<bool>, b); }
    Value operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{seed, object}, lit);
}

void apply_literal(VisualObject& obj, const std::string& name, Property prop,
                   const profile::Literal& lit, std::uint64_t seed) {
  Value v = literal_value(lit, seed, name);
  if (prop == Property::PrefabImage) v = sprite_id(std::get<std::string>(v));
  set_property(obj, prop, v);
}

}  // namespace

std::string_view op_kind_name(TransitionOp::Kind k) {
  switch (k) {
    case TransitionOp::Kind::Translate: return "translate";
    case TransitionOp::Kind::Scale: return "scale";
    case TransitionOp::Kind::Appear: return "appear";
    case TransitionOp::Kind::Disappear: return "disappear";
  }
  return "";
}

std::optional<TransitionOp::Kind> parse_op_kind(std::string_view name) {
  for (auto k : {TransitionOp::Kind::Translate, TransitionOp::Kind::Scale,
                 TransitionOp::Kind::Appear, TransitionOp::Kind::Disappear}) {
    if (op_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

SceneError::SceneError(Kind kind, const std::string& message, std::optional<std::size_t> state)
    : std::runtime_error(state ? "state " + std::to_string(*state) + ": " + message : message),
      kind_(kind),
      state_(state) {}

std::string sprite_id(const std::string& prefab) {
  if (profile::is_builtin_sprite(prefab)) return prefab;
  char buf[24];
  std::snprintf(buf, sizeof buf, "img-%016llx", static_cast<unsigned long long>(fnv1a(prefab)));
  return buf;
}

SceneSynthesizer::SceneSynthesizer(const profile::AnimationProfile& profile,
                                   const pddl::DomainAst& domain, const pddl::ProblemAst& problem,
                                   std::uint64_t seed)
    : profile_(profile), domain_(domain), problem_(problem), seed_(seed) {
  auto specs_for = [&](const std::string& target) {
    std::vector<const profile::ObjectSpec*> out;
    for (const auto& spec : profile_.object_specs) {
      if (spec.target == target) out.push_back(&spec);
    }
    return out;
  };
  auto apply_spec = [&](VisualObject& obj, const std::string& name, const profile::ObjectSpec& spec) {
    for (const auto& [prop, lit] : spec.properties) apply_literal(obj, name, prop, lit, seed_);
  };

  for (const auto& [name, type] : problem_.objects) {
    VisualObject obj;
    obj.label = name;
    std::vector<std::string> chain;
    for (std::string t = type;;) {
      chain.push_back(t);
      auto it = domain_.types.find(t);
      if (t == pddl::kRootType || it == domain_.types.end() || chain.size() > domain_.types.size() + 1) {
        break;
      }
      t = it->second;
    }
    if (chain.back() != pddl::kRootType) chain.emplace_back(pddl::kRootType);
    for (auto t = chain.rbegin(); t != chain.rend(); ++t) {
      for (const auto* spec : specs_for(*t)) apply_spec(obj, name, *spec);
    }
    // An object named like a type in its own chain already got that spec.
    if (std::find(chain.begin(), chain.end(), name) == chain.end()) {
      for (const auto* spec : specs_for(name)) apply_spec(obj, name, *spec);
    }
    base_[name] = std::move(obj);
  }
  for (const auto& custom : profile_.custom_objects) {
    VisualObject obj;
    obj.label = custom.target;
    apply_spec(obj, custom.target, custom);
    for (const auto* spec : specs_for(custom.target)) apply_spec(obj, custom.target, *spec);
    base_[custom.target] = std::move(obj);
  }
  auto note_sprite = [&](const profile::Literal& lit) {
    if (const auto* s = std::get_if<std::string>(&lit); s && !profile::is_builtin_sprite(*s)) {
      sprites_[sprite_id(*s)] = *s;
    }
  };
  for (const auto* list : {&profile_.object_specs, &profile_.custom_objects}) {
    for (const auto& spec : *list) {
      if (auto it = spec.properties.find(Property::PrefabImage); it != spec.properties.end()) {
        note_sprite(it->second);
      }
    }
  }
  for (const auto& rule : profile_.rules) {
    for (const auto& eff : rule.effects) {
      if (eff.kind == Effect::Kind::Equal && eff.target.property == Property::PrefabImage &&
          eff.expr.kind == Expr::Kind::Literal) {
        note_sprite(eff.expr.literal);
      }
    }
  }
}

Scene SceneSynthesizer::synthesize(const pddl::AtomSet& state,
                                   std::span<const pddl::GroundAtom> goal, int* iterations) const {
  return resolve(base_, state, goal, iterations);
}

Scene SceneSynthesizer::synthesize_goal(std::span<const pddl::GroundAtom> goal,
                                        const Scene& initial) const {
  ObjectTable start = base_;
  for (auto& [name, obj] : start) {
    if (auto it = initial.objects.find(name); it != initial.objects.end()) {
      obj.x = it->second.x;
      obj.y = it->second.y;
    }
  }
  const pddl::AtomSet atoms(goal.begin(), goal.end());
  return resolve(std::move(start), atoms, goal, nullptr);
}

Scene SceneSynthesizer::resolve(ObjectTable current, const pddl::AtomSet& state,
                                std::span<const pddl::GroundAtom> goal, int* iterations) const {
  struct Instance {
    const profile::PredicateRule* rule;
    const pddl::GroundAtom* atom;
  };
  struct Invocation {
    layout::FunctionInvocation inv;
    std::string source;
  };

  // True atoms with rules, ordered by (predicate, arguments).
  std::vector<Instance> instances;
  for (const auto& atom : state) {
    const profile::PredicateRule* rule = profile_.find_rule(atom.predicate);
    if (rule && rule->params.size() == atom.args.size()) instances.push_back({rule, &atom});
  }
  std::vector<const profile::PredicateRule*> rules;
  for (const auto& r : profile_.rules) rules.push_back(&r);
  std::sort(rules.begin(), rules.end(),
            [](const auto* a, const auto* b) { return a->predicate < b->predicate; });

  std::vector<Invocation> invocations;
  try {
    for (const auto* rule : rules) {
      for (const auto& eff : rule->effects) {
        if (eff.kind != Effect::Kind::Assign) continue;
        auto inv = layout::resolve_objects(eff.call, eff.target, *rule, state);
        if (inv.groups.empty() && inv.bindings.empty()) continue;
        invocations.push_back(
            {std::move(inv), "rule " + rule->predicate + " " +
                                 std::string(profile::function_name(eff.call.function))});
      }
    }
  } catch (const std::out_of_range& e) {
    throw SceneError(SceneError::Kind::Reference, e.what());
  }

  auto object_ref = [&](const std::string& ref, const profile::PredicateRule& rule,
                        const pddl::GroundAtom& atom) -> const std::string& {
    if (is_variable(ref)) {
      for (std::size_t i = 0; i < rule.params.size(); ++i) {
        if (rule.params[i] == ref) return atom.args[i];
      }
      throw SceneError(SceneError::Kind::Reference, "rule " + rule.predicate +
                                                        ": unbound variable '" + ref + "'");
    }
    if (!current.count(ref)) {
      throw SceneError(SceneError::Kind::Reference,
                       "rule " + rule.predicate + ": unknown object '" + ref + "'");
    }
    return ref;
  };

  // Value of `e`, or nullopt if it reads a null operand.
  auto eval = [&](const auto& self, const Expr& e, const profile::PredicateRule& rule,
                  const pddl::GroundAtom& atom, const std::string& target) -> std::optional<Value> {
    switch (e.kind) {
      case Expr::Kind::Literal:
        return literal_value(e.literal, seed_, target);
      case Expr::Kind::Property: {
        Value v = get_property(current.at(object_ref(e.ref.object, rule, atom)), e.ref.property);
        if (std::holds_alternative<std::monostate>(v)) return std::nullopt;
        return v;
      }
      case Expr::Kind::Add: {
        std::int64_t sum = 0;
        for (const auto& op : e.operands) {
          auto v = self(self, op, rule, atom, target);
          if (!v) return std::nullopt;
          const auto* i = std::get_if<std::int64_t>(&*v);
          if (!i) throw SceneError(SceneError::Kind::Value, "add operand is not an integer");
          sum += *i;
        }
        return Value(std::in_place_type<std::int64_t>, sum);
      }
    }
    return std::nullopt;
  };

  const int cap = static_cast<int>(current.size()) + 10;
  int changing_passes = 0;
  std::vector<LineElement> lines;
  for (;;) {
    WriteSet writes;
    lines.clear();
    for (const Instance& inst : instances) {
      for (const auto& eff : inst.rule->effects) {
        if (eff.kind != Effect::Kind::Equal) continue;
        const std::string& target = object_ref(eff.target.object, *inst.rule, *inst.atom);
        auto v = eval(eval, eff.expr, *inst.rule, *inst.atom, target);
        if (!v) continue;
        if (eff.target.property == Property::PrefabImage && eff.expr.kind == Expr::Kind::Literal) {
          v = sprite_id(std::get<std::string>(*v));
        }
        writes.add(target, eff.target.property, std::move(*v),
                   format_instance(*inst.rule, *inst.atom));
      }
    }
    for (const Invocation& invocation : invocations) {
      layout::LayoutResult result;
      try {
        result = layout::evaluate(invocation.inv, current, base_);
      } catch (const std::out_of_range& e) {
        throw SceneError(SceneError::Kind::Reference, invocation.source + ": " + e.what());
      }
      for (auto& w : result.writes) {
        writes.add(w.object, w.property, std::move(w.value), invocation.source);
      }
      lines.insert(lines.end(), result.lines.begin(), result.lines.end());
    }

    std::set<std::string> changed;
    for (const auto& [key, write] : writes.writes()) {
      VisualObject& obj = current.at(key.first);
      if (get_property(obj, key.second) == write.value) continue;
      try {
        set_property(obj, key.second, write.value);
      } catch (const std::invalid_argument& e) {
        throw SceneError(SceneError::Kind::Value, write.source + ": " + e.what());
      }
      changed.insert(key.first);
    }
    if (changed.empty()) break;
    if (++changing_passes > cap) {
      std::string names;
      for (const auto& n : changed) names += (names.empty() ? "" : ", ") + n;
      throw SceneError(SceneError::Kind::Cycle,
                       "no fixed point after " + std::to_string(cap) +
                           " iterations; still changing: " + names);
    }
  }
  if (iterations) *iterations = changing_passes;

  Scene scene;
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  scene.lines = std::move(lines);
  for (const auto& [name, obj] : current) {
    if (obj.visible()) scene.visible.insert(name);
  }
  scene.at_goal = plan::at_goal_objects(state, goal);
  scene.objects = std::move(current);
  return scene;
}

Scene synthesize_scene(const pddl::AtomSet& state, const profile::AnimationProfile& profile,
                       const pddl::DomainAst& domain, const pddl::ProblemAst& problem,
                       std::span<const pddl::GroundAtom> goal, std::uint64_t seed) {
  return SceneSynthesizer(profile, domain, problem, seed).synthesize(state, goal);
}

SceneSequence synthesize_sequence(const plan::Trajectory& trajectory,
                                  const SceneSynthesizer& synthesizer,
                                  std::span<const pddl::GroundAtom> goal) {
  SceneSequence seq;
  seq.scenes.reserve(trajectory.states.size());
  for (std::size_t i = 0; i < trajectory.states.size(); ++i) {
    try {
      seq.scenes.push_back(synthesizer.synthesize(trajectory.states[i], goal));
    } catch (const SceneError& e) {
      throw SceneError(e.kind(), e.what(), i);
    }
  }
  for (std::size_t i = 0; i + 1 < seq.scenes.size(); ++i) {
    seq.transitions.push_back(diff_scenes(seq.scenes[i], seq.scenes[i + 1]));
  }
  try {
    seq.goal_scene = synthesizer.synthesize_goal(goal, seq.scenes.front());
  } catch (const SceneError& e) {
    throw SceneError(e.kind(), std::string("goal scene: ") + e.what());
  }
  return seq;
}

Transition diff_scenes(const Scene& before, const Scene& after) {
  using Kind = TransitionOp::Kind;
  Transition t;
  for (const auto& [name, b] : before.objects) {
    auto it = after.objects.find(name);
    if (it == after.objects.end()) continue;
    const VisualObject& a = it->second;
    const bool was = b.visible();
    const bool is = a.visible();
    if (was && is && (b.x != a.x || b.y != a.y)) {
      t.ops.push_back({name, Kind::Translate, {*b.x, *b.y}, {*a.x, *a.y}});
    }
    if (b.width != a.width || b.height != a.height) {
      t.ops.push_back({name, Kind::Scale, {b.width, b.height}, {a.width, a.height}});
    }
    if (!was && is) t.ops.push_back({name, Kind::Appear, {0, 0}, {*a.x, *a.y}});
    if (was && !is) t.ops.push_back({name, Kind::Disappear, {*b.x, *b.y}, {0, 0}});
  }
  return t;
}

}  // namespace planim::scene
