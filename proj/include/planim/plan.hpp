#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "planim/pddl.hpp"

namespace planim::plan {

using pddl::AtomSet;
using pddl::GroundAtom;

struct GroundAction {
  std::string name;
  std::vector<std::string> args;
  AtomSet pre;
  AtomSet add;
  /// Never intersects `add`: an atom both added and deleted is kept.
  AtomSet del;
  /// Equality literals that evaluated false, printed as "(= a b)" or
  /// "(not (= a a))". Non-empty means the action is never applicable.
  std::vector<std::string> failed_equalities;

  bool operator==(const GroundAction&) const = default;

  std::string to_string() const;
};

struct Trajectory {
  std::vector<AtomSet> states;
  std::vector<GroundAction> actions;

  bool operator==(const Trajectory&) const = default;
};

class GroundingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// First failing step of a plan.
class PlanError : public std::runtime_error {
 public:
  enum class Kind { Grounding, Precondition };

  PlanError(Kind kind, std::size_t step, std::string action, std::vector<std::string> missing,
            const std::string& detail);

  Kind kind() const { return kind_; }
  std::size_t step() const { return step_; }
  const std::string& action() const { return action_; }
  /// Missing precondition atoms (sorted), followed by failed equalities.
  const std::vector<std::string>& missing() const { return missing_; }

 private:
  Kind kind_;
  std::size_t step_;
  std::string action_;
  std::vector<std::string> missing_;
};

GroundAction ground_step(const pddl::DomainAst& domain, const pddl::ProblemAst& problem,
                         const pddl::PlanStep& step);

/// (state \ del) ∪ add
AtomSet apply(const AtomSet& state, const GroundAction& action);

Trajectory execute_plan(const pddl::DomainAst& domain, const pddl::ProblemAst& problem,
                        const pddl::PlanText& plan);

struct SubgoalTable {
  std::vector<GroundAtom> goals;
  /// rows[g] lists the state indices where goals[g] holds, ascending.
  std::vector<std::vector<std::size_t>> rows;
  /// satisfied[i] lists the goal atoms true in state i, in goal order.
  std::vector<std::vector<GroundAtom>> satisfied;

  bool operator==(const SubgoalTable&) const = default;
};

SubgoalTable goal_report(const Trajectory& trajectory, std::span<const GroundAtom> goal);

/// Objects mentioned by at least one goal atom whose every goal atom holds.
std::set<std::string> at_goal_objects(const AtomSet& state, std::span<const GroundAtom> goal);

}  // namespace planim::plan
