#include <algorithm>
#include <map>

#include "planim/plan.hpp"

namespace planim::plan {

namespace {

std::string describe_failure(std::size_t step, const std::string& action,
                             const std::vector<std::string>& missing) {
  std::string msg = "step " + std::to_string(step) + " " + action + ": missing preconditions";
  for (const auto& m : missing) msg += " " + m;
  return msg;
}

}  // namespace

PlanError::PlanError(Kind kind, std::size_t step, std::string action,
                     std::vector<std::string> missing, const std::string& detail)
    : std::runtime_error(kind == Kind::Precondition ? describe_failure(step, action, missing)
                                                    : "step " + std::to_string(step) + " " +
                                                          action + ": " + detail),
      kind_(kind),
      step_(step),
      action_(std::move(action)),
      missing_(std::move(missing)) {}

std::string GroundAction::to_string() const {
  std::string s = "(" + name;
  for (const auto& a : args) s += " " + a;
  return s + ")";
}

GroundAction ground_step(const pddl::DomainAst& domain, const pddl::ProblemAst& problem,
                         const pddl::PlanStep& step) {
  const pddl::ActionSchema* schema = domain.find_action(step.action);
  if (!schema) throw GroundingError("unknown action '" + step.action + "'");
  if (schema->params.size() != step.args.size()) {
    throw GroundingError("action '" + step.action + "' expects " +
                         std::to_string(schema->params.size()) + " arguments, got " +
                         std::to_string(step.args.size()));
  }
  std::map<std::string, std::string> binding;
  for (std::size_t i = 0; i < step.args.size(); ++i) {
    const std::string& obj = step.args[i];
    auto it = problem.objects.find(obj);
    if (it == problem.objects.end()) throw GroundingError("unknown object '" + obj + "'");
    const std::string& want = schema->params[i].type;
    if (!domain.is_subtype(it->second, want)) {
      throw GroundingError("argument '" + obj + "' of type " + it->second + " does not match " +
                           schema->params[i].name + " - " + want);
    }
    binding[schema->params[i].name] = obj;
  }
  auto subst = [&](const std::string& term) -> const std::string& {
    auto it = binding.find(term);
    return it == binding.end() ? term : it->second;
  };
  auto ground = [&](const pddl::Atom& atom) {
    GroundAtom g{atom.predicate, {}};
    g.args.reserve(atom.args.size());
    for (const auto& a : atom.args) g.args.push_back(subst(a));
    return g;
  };

  GroundAction out;
  out.name = step.action;
  out.args = step.args;
  for (const auto& a : schema->precondition) out.pre.insert(ground(a));
  for (const auto& a : schema->add_effects) out.add.insert(ground(a));
  for (const auto& a : schema->del_effects) {
    GroundAtom g = ground(a);
    if (!out.add.count(g)) out.del.insert(std::move(g));
  }
  for (const auto& eq : schema->equalities) {
    const std::string& l = subst(eq.lhs);
    const std::string& r = subst(eq.rhs);
    if ((l == r) == eq.negated) {
      out.failed_equalities.push_back(eq.negated ? "(not (= " + l + " " + r + "))"
                                                 : "(= " + l + " " + r + ")");
    }
  }
  return out;
}

AtomSet apply(const AtomSet& state, const GroundAction& action) {
  AtomSet next;
  std::set_difference(state.begin(), state.end(), action.del.begin(), action.del.end(),
                      std::inserter(next, next.end()));
  next.insert(action.add.begin(), action.add.end());
  return next;
}

Trajectory execute_plan(const pddl::DomainAst& domain, const pddl::ProblemAst& problem,
                        const pddl::PlanText& plan) {
  Trajectory t;
  t.states.reserve(plan.steps.size() + 1);
  t.actions.reserve(plan.steps.size());
  t.states.push_back(problem.init);
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const pddl::PlanStep& step = plan.steps[i];
    GroundAction action;
    try {
      action = ground_step(domain, problem, step);
    } catch (const GroundingError& e) {
      throw PlanError(PlanError::Kind::Grounding, i, step.to_string(), {}, e.what());
    }
    const AtomSet& current = t.states.back();
    std::vector<std::string> missing;
    for (const auto& atom : action.pre) {
      if (!current.count(atom)) missing.push_back(atom.to_string());
    }
    missing.insert(missing.end(), action.failed_equalities.begin(), action.failed_equalities.end());
    if (!missing.empty()) {
      throw PlanError(PlanError::Kind::Precondition, i, action.to_string(), std::move(missing), "");
    }
    t.states.push_back(plan::apply(current, action));
    t.actions.push_back(std::move(action));
  }
  return t;
}

SubgoalTable goal_report(const Trajectory& trajectory, std::span<const GroundAtom> goal) {
  SubgoalTable table;
  table.goals.assign(goal.begin(), goal.end());
  table.rows.resize(goal.size());
  table.satisfied.resize(trajectory.states.size());
  for (std::size_t i = 0; i < trajectory.states.size(); ++i) {
    for (std::size_t g = 0; g < goal.size(); ++g) {
      if (trajectory.states[i].count(goal[g])) {
        table.rows[g].push_back(i);
        table.satisfied[i].push_back(goal[g]);
      }
    }
  }
  return table;
}

std::set<std::string> at_goal_objects(const AtomSet& state, std::span<const GroundAtom> goal) {
  std::map<std::string, bool> all_true;
  for (const auto& atom : goal) {
    bool holds = state.count(atom) > 0;
    for (const auto& obj : atom.args) {
      auto [it, fresh] = all_true.emplace(obj, holds);
      if (!fresh) it->second = it->second && holds;
    }
  }
  std::set<std::string> out;
  for (const auto& [obj, ok] : all_true) {
    if (ok) out.insert(obj);
  }
  return out;
}

}  // namespace planim::plan
