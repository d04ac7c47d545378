#include "simulator.hpp"

#include <map>

namespace planim::oracle {

std::string atom_text(const std::string& predicate, const std::vector<std::string>& args) {
  std::string s = "(" + predicate;
  for (const auto& a : args) s += " " + a;
  return s + ")";
}

namespace {

bool subtype(const pddl::DomainAst& d, std::string t, const std::string& ancestor) {
  if (ancestor == "object") return true;
  for (int guard = 0; guard < 1000; ++guard) {
    if (t == ancestor) return true;
    auto it = d.types.find(t);
    if (it == d.types.end()) return false;
    t = it->second;
  }
  return false;
}

}  // namespace

SimResult simulate(const pddl::DomainAst& domain, const pddl::ProblemAst& problem,
                   const std::vector<pddl::PlanStep>& plan) {
  SimResult r;
  StringState state;
  for (const auto& a : problem.init) state.insert(atom_text(a.predicate, a.args));
  r.states.push_back(state);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const pddl::PlanStep& step = plan[i];
    const pddl::ActionSchema* schema = nullptr;
    for (const auto& a : domain.actions) {
      if (a.name == step.action) schema = &a;
    }
    bool ok = schema && schema->params.size() == step.args.size();
    std::map<std::string, std::string> sigma;
    for (std::size_t k = 0; ok && k < step.args.size(); ++k) {
      auto obj = problem.objects.find(step.args[k]);
      ok = obj != problem.objects.end() && subtype(domain, obj->second, schema->params[k].type);
      sigma[schema->params[k].name] = step.args[k];
    }
    auto subst = [&](const std::string& term) {
      auto it = sigma.find(term);
      return it == sigma.end() ? term : it->second;
    };
    auto ground = [&](const pddl::Atom& a) {
      std::vector<std::string> args;
      for (const auto& t : a.args) args.push_back(subst(t));
      return atom_text(a.predicate, args);
    };
    if (ok) {
      for (const auto& e : schema->equalities) {
        ok = ok && ((subst(e.lhs) == subst(e.rhs)) != e.negated);
      }
      for (const auto& p : schema->precondition) ok = ok && state.count(ground(p)) > 0;
    }
    if (!ok) {
      r.valid = false;
      r.failing_step = i;
      return r;
    }
    StringState next = state;
    for (const auto& d : schema->del_effects) next.erase(ground(d));
    for (const auto& a : schema->add_effects) next.insert(ground(a));
    state = std::move(next);
    r.states.push_back(state);
  }
  return r;
}

}  // namespace planim::oracle
