#include "planim/vfg.hpp"

#include <json.hpp>

namespace planim::vfg {

using json = nlohmann::json;
using scene::Scene;
using scene::Transition;
using scene::TransitionOp;

namespace {

json strings(const std::vector<std::string>& v) { return json(v); }

json object_to_json(const VisualObject& o) {
  json j;
  j["x"] = o.x ? json(*o.x) : json(nullptr);
  j["y"] = o.y ? json(*o.y) : json(nullptr);
  j["width"] = o.width;
  j["height"] = o.height;
  j["color"] = o.color.hex();
  j["prefabImage"] = o.sprite;
  j["depth"] = o.depth;
  j["showname"] = o.showname;
  j["label"] = o.label;
  return j;
}

json scene_to_json(const Scene& s) {
  json objects = json::object();
  for (const auto& [name, obj] : s.objects) objects[name] = object_to_json(obj);
  json lines = json::array();
  for (const auto& l : s.lines) {
    lines.push_back({{"from", l.from},
                     {"to", l.to},
                     {"color", l.color.hex()},
                     {"x1", l.x1},
                     {"y1", l.y1},
                     {"x2", l.x2},
                     {"y2", l.y2}});
  }
  return {{"objects", std::move(objects)}, {"lines", std::move(lines)}};
}

json transition_to_json(const Transition& t) {
  json ops = json::array();
  for (const auto& op : t.ops) {
    json j{{"object", op.object}, {"kind", std::string(scene::op_kind_name(op.kind))}};
    if (op.kind != TransitionOp::Kind::Appear) j["from"] = {op.from[0], op.from[1]};
    if (op.kind != TransitionOp::Kind::Disappear) j["to"] = {op.to[0], op.to[1]};
    ops.push_back(std::move(j));
  }
  return {{"durationSeconds", t.duration_seconds}, {"ops", std::move(ops)}};
}

std::vector<std::string> atom_strings(const pddl::AtomSet& atoms) {
  std::vector<std::string> out;
  for (const auto& a : atoms) out.push_back(a.to_string());
  return out;
}

// --- reading --------------------------------------------------------------

class Reader {
 public:
  const json& field(const json& obj, const std::string& path, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) throw VfgError(join(path, key), "missing field");
    return *it;
  }

  void expect_object(const json& j, const std::string& path,
                     std::initializer_list<const char*> allowed) const {
    if (!j.is_object()) throw VfgError(path, "expected an object");
    for (const auto& [key, value] : j.items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) throw VfgError(join(path, key.c_str()), "unknown field");
    }
  }

  std::string string(const json& j, const std::string& path) const {
    if (!j.is_string()) throw VfgError(path, "expected a string");
    return j.get<std::string>();
  }

  std::int64_t integer(const json& j, const std::string& path) const {
    if (!j.is_number_integer()) throw VfgError(path, "expected an integer");
    return j.get<std::int64_t>();
  }

  std::optional<std::int64_t> nullable_integer(const json& j, const std::string& path) const {
    if (j.is_null()) return std::nullopt;
    return integer(j, path);
  }

  Rgb color(const json& j, const std::string& path) const {
    auto c = parse_hex_color(string(j, path));
    if (!c) throw VfgError(path, "expected a #RRGGBB color");
    return *c;
  }

  std::vector<std::string> strings(const json& j, const std::string& path) const {
    if (!j.is_array()) throw VfgError(path, "expected an array");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string(j[i], index(path, i)));
    return out;
  }

  std::array<std::int64_t, 2> pair(const json& j, const std::string& path) const {
    if (!j.is_array() || j.size() != 2) throw VfgError(path, "expected [a, b]");
    return {integer(j[0], index(path, 0)), integer(j[1], index(path, 1))};
  }

  VisualObject object(const json& j, const std::string& path) const {
    expect_object(j, path,
                  {"x", "y", "width", "height", "color", "prefabImage", "depth", "showname",
                   "label"});
    VisualObject o;
    o.x = nullable_integer(field(j, path, "x"), join(path, "x"));
    o.y = nullable_integer(field(j, path, "y"), join(path, "y"));
    o.width = integer(field(j, path, "width"), join(path, "width"));
    o.height = integer(field(j, path, "height"), join(path, "height"));
    if (o.width <= 0) throw VfgError(join(path, "width"), "must be positive");
    if (o.height <= 0) throw VfgError(join(path, "height"), "must be positive");
    o.color = color(field(j, path, "color"), join(path, "color"));
    o.sprite = string(field(j, path, "prefabImage"), join(path, "prefabImage"));
    o.depth = integer(field(j, path, "depth"), join(path, "depth"));
    const json& show = field(j, path, "showname");
    if (!show.is_boolean()) throw VfgError(join(path, "showname"), "expected a boolean");
    o.showname = show.get<bool>();
    o.label = string(field(j, path, "label"), join(path, "label"));
    return o;
  }

  Scene scene(const json& j, const std::string& path, bool with_at_goal) const {
    if (with_at_goal) {
      expect_object(j, path, {"objects", "lines", "atGoal"});
    } else {
      expect_object(j, path, {"objects", "lines"});
    }
    Scene s;
    const json& objects = field(j, path, "objects");
    const std::string opath = join(path, "objects");
    if (!objects.is_object()) throw VfgError(opath, "expected an object");
    for (const auto& [name, value] : objects.items()) {
      VisualObject o = object(value, join(opath, name.c_str()));
      if (o.visible()) s.visible.insert(name);
      s.objects.emplace(name, std::move(o));
    }
    const json& lines = field(j, path, "lines");
    const std::string lpath = join(path, "lines");
    if (!lines.is_array()) throw VfgError(lpath, "expected an array");
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const std::string p = index(lpath, i);
      const json& l = lines[i];
      expect_object(l, p, {"from", "to", "color", "x1", "y1", "x2", "y2"});
      LineElement e;
      e.from = string(field(l, p, "from"), join(p, "from"));
      e.to = string(field(l, p, "to"), join(p, "to"));
      e.color = color(field(l, p, "color"), join(p, "color"));
      e.x1 = integer(field(l, p, "x1"), join(p, "x1"));
      e.y1 = integer(field(l, p, "y1"), join(p, "y1"));
      e.x2 = integer(field(l, p, "x2"), join(p, "x2"));
      e.y2 = integer(field(l, p, "y2"), join(p, "y2"));
      for (const std::string* end : {&e.from, &e.to}) {
        if (!s.objects.count(*end)) throw VfgError(p, "line endpoint '" + *end + "' is not an object");
      }
      s.lines.push_back(std::move(e));
    }
    if (with_at_goal) at_goal(field(j, path, "atGoal"), join(path, "atGoal"), s);
    return s;
  }

  void at_goal(const json& j, const std::string& path, Scene& s) const {
    for (const auto& name : strings(j, path)) {
      if (!s.objects.count(name)) throw VfgError(path, "'" + name + "' is not an object");
      s.at_goal.insert(name);
    }
  }

  Transition transition(const json& j, const std::string& path, const Scene& scene) const {
    expect_object(j, path, {"durationSeconds", "ops"});
    Transition t;
    const json& d = field(j, path, "durationSeconds");
    if (!d.is_number() || d.get<double>() < 0) {
      throw VfgError(join(path, "durationSeconds"), "expected a non-negative number");
    }
    t.duration_seconds = d.get<double>();
    const json& ops = field(j, path, "ops");
    const std::string opath = join(path, "ops");
    if (!ops.is_array()) throw VfgError(opath, "expected an array");
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const std::string p = index(opath, i);
      const json& o = ops[i];
      expect_object(o, p, {"object", "kind", "from", "to"});
      TransitionOp op;
      op.object = string(field(o, p, "object"), join(p, "object"));
      if (!scene.objects.count(op.object)) throw VfgError(join(p, "object"), "unknown object");
      const std::string kind = string(field(o, p, "kind"), join(p, "kind"));
      auto k = scene::parse_op_kind(kind);
      if (!k) throw VfgError(join(p, "kind"), "unknown transition kind '" + kind + "'");
      op.kind = *k;
      if (op.kind != TransitionOp::Kind::Appear) op.from = pair(field(o, p, "from"), join(p, "from"));
      if (op.kind != TransitionOp::Kind::Disappear) op.to = pair(field(o, p, "to"), join(p, "to"));
      if ((op.kind == TransitionOp::Kind::Appear && o.contains("from")) ||
          (op.kind == TransitionOp::Kind::Disappear && o.contains("to"))) {
        throw VfgError(p, "unexpected endpoint for " + kind);
      }
      t.ops.push_back(std::move(op));
    }
    return t;
  }

  static std::string join(const std::string& path, const char* key) {
    return path.empty() ? std::string(key) : path + "." + key;
  }
  static std::string index(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
  }
};

void check_sprites(const VfgDocument& doc, const Scene& s, const std::string& path) {
  for (const auto& [name, obj] : s.objects) {
    if (!doc.sprites.count(obj.sprite)) {
      throw VfgError(path + ".objects." + name + ".prefabImage",
                     "sprite '" + obj.sprite + "' is not in sprites");
    }
  }
}

}  // namespace

VfgError::VfgError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

VfgDocument build_document(const scene::SceneSequence& sequence,
                           const plan::Trajectory& trajectory, const plan::SubgoalTable& report,
                           const Metadata& metadata,
                           const std::map<std::string, std::string>& sprite_payloads) {
  VfgDocument doc;
  doc.metadata = metadata;
  for (const auto& g : report.goals) doc.goals.push_back(g.to_string());
  doc.goal_scene = sequence.goal_scene;
  for (std::size_t i = 0; i < sequence.scenes.size(); ++i) {
    StepRecord step;
    step.index = i;
    step.scene = sequence.scenes[i];
    if (i > 0) {
      const plan::GroundAction& a = trajectory.actions.at(i - 1);
      step.action = a.to_string();
      step.preconditions = atom_strings(a.pre);
      step.add_effects = atom_strings(a.add);
      step.del_effects = atom_strings(a.del);
      step.transition = sequence.transitions.at(i - 1);
    }
    if (i < report.satisfied.size()) {
      for (const auto& g : report.satisfied[i]) step.satisfied_subgoals.push_back(g.to_string());
    }
    doc.steps.push_back(std::move(step));
  }
  auto note = [&](const Scene& s) {
    for (const auto& [name, obj] : s.objects) {
      if (profile::is_builtin_sprite(obj.sprite)) {
        doc.sprites[obj.sprite] = std::string(kBuiltinSpritePrefix) + obj.sprite;
      } else if (auto it = sprite_payloads.find(obj.sprite); it != sprite_payloads.end()) {
        doc.sprites[obj.sprite] = it->second;
      }
    }
  };
  for (const auto& s : sequence.scenes) note(s);
  note(sequence.goal_scene);
  return doc;
}

std::string serialize(const VfgDocument& doc) {
  json j;
  j["version"] = doc.version;
  j["metadata"] = {{"domainName", doc.metadata.domain_name},
                   {"problemName", doc.metadata.problem_name},
                   {"generator", doc.metadata.generator},
                   {"seed", doc.metadata.seed}};
  j["sprites"] = doc.sprites;
  j["goals"] = strings(doc.goals);
  json goal_scene = scene_to_json(doc.goal_scene);
  goal_scene["atGoal"] = std::vector<std::string>(doc.goal_scene.at_goal.begin(),
                                                  doc.goal_scene.at_goal.end());
  j["goalScene"] = std::move(goal_scene);
  json steps = json::array();
  for (const auto& s : doc.steps) {
    json step;
    step["index"] = s.index;
    if (s.action) {
      step["action"] = *s.action;
      step["preconditions"] = strings(s.preconditions);
      step["addEffects"] = strings(s.add_effects);
      step["delEffects"] = strings(s.del_effects);
    }
    step["scene"] = scene_to_json(s.scene);
    if (s.transition) step["transition"] = transition_to_json(*s.transition);
    step["atGoal"] = std::vector<std::string>(s.scene.at_goal.begin(), s.scene.at_goal.end());
    step["satisfiedSubgoals"] = strings(s.satisfied_subgoals);
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  return j.dump();
}

VfgDocument deserialize(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw VfgError("", std::string("not valid JSON: ") + e.what());
  }
  Reader r;
  r.expect_object(j, "", {"version", "metadata", "sprites", "goals", "goalScene", "steps"});
  VfgDocument doc;
  doc.version = r.string(r.field(j, "", "version"), "version");
  if (doc.version != kVersion) {
    throw VfgError("version", "unsupported version '" + doc.version + "', expected '" +
                                  std::string(kVersion) + "'");
  }
  const json& meta = r.field(j, "", "metadata");
  r.expect_object(meta, "metadata", {"domainName", "problemName", "generator", "seed"});
  doc.metadata.domain_name = r.string(r.field(meta, "metadata", "domainName"), "metadata.domainName");
  doc.metadata.problem_name =
      r.string(r.field(meta, "metadata", "problemName"), "metadata.problemName");
  doc.metadata.generator = r.string(r.field(meta, "metadata", "generator"), "metadata.generator");
  const json& seed = r.field(meta, "metadata", "seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
    throw VfgError("metadata.seed", "expected a non-negative integer");
  }
  doc.metadata.seed = seed.get<std::uint64_t>();

  const json& sprites = r.field(j, "", "sprites");
  if (!sprites.is_object()) throw VfgError("sprites", "expected an object");
  for (const auto& [id, payload] : sprites.items()) {
    doc.sprites[id] = r.string(payload, "sprites." + id);
  }
  doc.goals = r.strings(r.field(j, "", "goals"), "goals");
  doc.goal_scene = r.scene(r.field(j, "", "goalScene"), "goalScene", true);
  check_sprites(doc, doc.goal_scene, "goalScene");

  const json& steps = r.field(j, "", "steps");
  if (!steps.is_array()) throw VfgError("steps", "expected an array");
  if (steps.empty()) throw VfgError("steps", "at least one step is required");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string p = Reader::index("steps", i);
    const json& s = steps[i];
    r.expect_object(s, p,
                    {"index", "action", "preconditions", "addEffects", "delEffects", "scene",
                     "transition", "atGoal", "satisfiedSubgoals"});
    StepRecord step;
    std::int64_t index = r.integer(r.field(s, p, "index"), p + ".index");
    if (index != static_cast<std::int64_t>(i)) {
      throw VfgError(p + ".index", "step index gap: expected " + std::to_string(i) + ", found " +
                                       std::to_string(index));
    }
    step.index = i;
    const bool first = i == 0;
    for (const char* key : {"action", "preconditions", "addEffects", "delEffects", "transition"}) {
      if (first && s.contains(key)) throw VfgError(p + "." + key, "not allowed on step 0");
      if (!first && !s.contains(key)) throw VfgError(p + "." + key, "missing field");
    }
    step.scene = r.scene(r.field(s, p, "scene"), p + ".scene", false);
    check_sprites(doc, step.scene, p + ".scene");
    r.at_goal(r.field(s, p, "atGoal"), p + ".atGoal", step.scene);
    if (!first) {
      step.action = r.string(s["action"], p + ".action");
      step.preconditions = r.strings(s["preconditions"], p + ".preconditions");
      step.add_effects = r.strings(s["addEffects"], p + ".addEffects");
      step.del_effects = r.strings(s["delEffects"], p + ".delEffects");
      step.transition = r.transition(s["transition"], p + ".transition", step.scene);
    }
    step.satisfied_subgoals = r.strings(r.field(s, p, "satisfiedSubgoals"), p + ".satisfiedSubgoals");
    for (const auto& g : step.satisfied_subgoals) {
      if (std::find(doc.goals.begin(), doc.goals.end(), g) == doc.goals.end()) {
        throw VfgError(p + ".satisfiedSubgoals", "'" + g + "' is not a goal");
      }
    }
    doc.steps.push_back(std::move(step));
  }
  return doc;
}

std::string serialize_vfg(const scene::SceneSequence& sequence, const plan::Trajectory& trajectory,
                          const plan::SubgoalTable& report, const Metadata& metadata,
                          const std::map<std::string, std::string>& sprite_payloads) {
  return serialize(build_document(sequence, trajectory, report, metadata, sprite_payloads));
}

scene::SceneSequence to_sequence(const VfgDocument& doc) {
  scene::SceneSequence seq;
  for (const auto& step : doc.steps) {
    seq.scenes.push_back(step.scene);
    if (step.transition) seq.transitions.push_back(*step.transition);
  }
  seq.goal_scene = doc.goal_scene;
  return seq;
}

}  // namespace planim::vfg
