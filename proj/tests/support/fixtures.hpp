#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "planim/pddl.hpp"
#include "planim/plan.hpp"
#include "planim/profile.hpp"

namespace planim::testing {

inline const std::vector<std::string> kFixtureNames{"blocksworld", "grid", "logistics", "hanoi"};

std::filesystem::path fixture_dir();
std::filesystem::path fixture_path(const std::string& name, const std::string& file);
std::string read_text(const std::filesystem::path& path);

struct Fixture {
  std::string name;
  std::string domain_text;
  std::string problem_text;
  std::string plan_text;
  std::string profile_text;
  pddl::DomainAst domain;
  pddl::ProblemAst problem;
  pddl::PlanText plan;
  profile::AnimationProfile profile;
};

Fixture load_fixture(const std::string& name);

}  // namespace planim::testing
