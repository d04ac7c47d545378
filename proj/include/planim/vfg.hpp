#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "planim/plan.hpp"
#include "planim/scene.hpp"

namespace planim::vfg {

inline constexpr std::string_view kVersion = "planim/1";
inline constexpr std::string_view kBuiltinSpritePrefix = "builtin:";

struct Metadata {
  std::string domain_name;
  std::string problem_name;
  std::string generator = "planim";
  std::uint64_t seed = 0;

  bool operator==(const Metadata&) const = default;
};

struct StepRecord {
  std::size_t index = 0;
  /// Absent on step 0, present on every later step, as are the three lists.
  std::optional<std::string> action;
  std::vector<std::string> preconditions;
  std::vector<std::string> add_effects;
  std::vector<std::string> del_effects;
  /// The scene's at_goal set is the step's at-goal list.
  scene::Scene scene;
  /// Transition from the previous step's scene; absent on step 0.
  std::optional<scene::Transition> transition;
  std::vector<std::string> satisfied_subgoals;

  bool operator==(const StepRecord&) const = default;
};

struct VfgDocument {
  std::string version{kVersion};
  Metadata metadata;
  /// sprite id -> "builtin:<id>" or base64 payload
  std::map<std::string, std::string> sprites;
  std::vector<std::string> goals;
  scene::Scene goal_scene;
  std::vector<StepRecord> steps;

  bool operator==(const VfgDocument&) const = default;
};

/// Schema violation; `path()` names the offending field, e.g. "steps[2].index".
class VfgError : public std::runtime_error {
 public:
  VfgError(std::string path, const std::string& message);

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

VfgDocument build_document(const scene::SceneSequence& sequence,
                           const plan::Trajectory& trajectory, const plan::SubgoalTable& report,
                           const Metadata& metadata,
                           const std::map<std::string, std::string>& sprite_payloads);

/// Canonical JSON: sorted keys, no whitespace, integers unquoted.
std::string serialize(const VfgDocument& doc);
VfgDocument deserialize(std::string_view bytes);

std::string serialize_vfg(const scene::SceneSequence& sequence, const plan::Trajectory& trajectory,
                          const plan::SubgoalTable& report, const Metadata& metadata,
                          const std::map<std::string, std::string>& sprite_payloads);

/// Rebuilds the scene sequence a document describes.
scene::SceneSequence to_sequence(const VfgDocument& doc);

}  // namespace planim::vfg
