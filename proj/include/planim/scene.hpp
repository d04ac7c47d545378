#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "planim/pddl.hpp"
#include "planim/plan.hpp"
#include "planim/profile.hpp"
#include "planim/visual.hpp"

namespace planim::scene {

struct Scene {
  ObjectTable objects;
  std::vector<LineElement> lines;  // sorted, unique
  std::set<std::string> visible;
  std::set<std::string> at_goal;

  bool operator==(const Scene&) const = default;
};

struct TransitionOp {
  enum class Kind { Translate, Scale, Appear, Disappear };

  std::string object;
  Kind kind = Kind::Translate;
  /// Translate: (x, y) before/after. Scale: (w, h) before/after.
  /// Appear: `to` is the new (x, y). Disappear: `from` is the last (x, y).
  std::array<std::int64_t, 2> from{};
  std::array<std::int64_t, 2> to{};

  bool operator==(const TransitionOp&) const = default;
};

std::string_view op_kind_name(TransitionOp::Kind k);
std::optional<TransitionOp::Kind> parse_op_kind(std::string_view name);

inline constexpr double kDefaultTransitionSeconds = 1.0;

struct Transition {
  std::vector<TransitionOp> ops;  // by object, then kind
  double duration_seconds = kDefaultTransitionSeconds;

  bool operator==(const Transition&) const = default;
};

struct SceneSequence {
  std::vector<Scene> scenes;
  std::vector<Transition> transitions;
  Scene goal_scene;

  bool operator==(const SceneSequence&) const = default;
};

class SceneError : public std::runtime_error {
 public:
  enum class Kind { Cycle, Conflict, Reference, Value };

  SceneError(Kind kind, const std::string& message, std::optional<std::size_t> state = {});

  Kind kind() const { return kind_; }
  std::optional<std::size_t> state_index() const { return state_; }

 private:
  Kind kind_;
  std::optional<std::size_t> state_;
};

/// Resolves scenes for one (profile, domain, problem) triple. Holds
/// references to all three.
class SceneSynthesizer {
 public:
  SceneSynthesizer(const profile::AnimationProfile& profile, const pddl::DomainAst& domain,
                   const pddl::ProblemAst& problem, std::uint64_t seed = 0);

  /// Problem and custom objects with defaults, then type specs (general to
  /// specific), then object specs applied.
  const ObjectTable& base() const { return base_; }
  /// sprite id -> base64 payload for every non-built-in sprite in the profile.
  const std::map<std::string, std::string>& sprite_payloads() const { return sprites_; }

  Scene synthesize(const pddl::AtomSet& state, std::span<const pddl::GroundAtom> goal,
                   int* iterations = nullptr) const;

  /// Scene for the goal atoms alone. Objects keep their initial-scene
  /// position unless a goal atom moves them.
  Scene synthesize_goal(std::span<const pddl::GroundAtom> goal, const Scene& initial) const;

 private:
  Scene resolve(ObjectTable start, const pddl::AtomSet& state,
                std::span<const pddl::GroundAtom> goal, int* iterations) const;

  const profile::AnimationProfile& profile_;
  const pddl::DomainAst& domain_;
  const pddl::ProblemAst& problem_;
  std::uint64_t seed_;
  ObjectTable base_;
  std::map<std::string, std::string> sprites_;
};

Scene synthesize_scene(const pddl::AtomSet& state, const profile::AnimationProfile& profile,
                       const pddl::DomainAst& domain, const pddl::ProblemAst& problem,
                       std::span<const pddl::GroundAtom> goal, std::uint64_t seed = 0);

SceneSequence synthesize_sequence(const plan::Trajectory& trajectory,
                                  const SceneSynthesizer& synthesizer,
                                  std::span<const pddl::GroundAtom> goal);

Transition diff_scenes(const Scene& before, const Scene& after);

/// Sprite id for a prefabImage value: built-ins keep their name, payloads
/// become "img-" + 16 hex digits of their hash.
std::string sprite_id(const std::string& prefab);

}  // namespace planim::scene
