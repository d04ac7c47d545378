#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace planim::testing {

std::filesystem::path fixture_dir() { return PLANIM_FIXTURE_DIR; }

std::filesystem::path fixture_path(const std::string& name, const std::string& file) {
  return fixture_dir() / name / file;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Fixture load_fixture(const std::string& name) {
  Fixture f;
  f.name = name;
  f.domain_text = read_text(fixture_path(name, "domain.pddl"));
  f.problem_text = read_text(fixture_path(name, "problem.pddl"));
  f.plan_text = read_text(fixture_path(name, "plan.txt"));
  f.profile_text = read_text(fixture_path(name, "animation.pddl"));
  f.domain = pddl::parse_domain(f.domain_text);
  f.problem = pddl::parse_problem(f.problem_text, f.domain);
  f.plan = pddl::parse_plan(f.plan_text, f.domain);
  f.profile = profile::parse_profile(f.profile_text);
  return f;
}

}  // namespace planim::testing
