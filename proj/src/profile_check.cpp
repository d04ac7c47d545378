#include <algorithm>
#include <set>

#include "planim/profile.hpp"

namespace planim::profile {

namespace {

using Severity = Diagnostic::Severity;

void collect_expr_refs(const Expr& e, std::vector<std::string>& out) {
  if (e.kind == Expr::Kind::Property) out.push_back(e.ref.object);
  for (const auto& op : e.operands) collect_expr_refs(op, out);
}

}  // namespace

std::string Diagnostic::to_string() const {
  return std::string(severity == Severity::Error ? "error: " : "warning: ") + message;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::vector<Diagnostic> check_profile(const AnimationProfile& profile, const pddl::DomainAst& domain,
                                      const pddl::ProblemAst& problem) {
  std::set<Diagnostic> out;
  auto error = [&](std::string msg) { out.insert({Severity::Error, std::move(msg)}); };

  for (const auto& custom : profile.custom_objects) {
    if (problem.objects.count(custom.target)) {
      error("custom object '" + custom.target + "' collides with problem object '" +
            custom.target + "'");
    }
  }
  for (const auto& spec : profile.object_specs) {
    bool known = problem.objects.count(spec.target) || domain.has_type(spec.target) ||
                 profile.find_custom(spec.target);
    if (!known) error("object spec targets unknown object or type '" + spec.target + "'");
  }

  std::set<std::string> seen_rules;
  for (const auto& rule : profile.rules) {
    const std::string where = "rule '" + rule.predicate + "'";
    if (!seen_rules.insert(rule.predicate).second) error("second " + where);
    const pddl::PredicateSchema* pred = domain.find_predicate(rule.predicate);
    if (!pred) {
      error(where + ": predicate '" + rule.predicate + "' is not in domain '" + domain.name + "'");
    } else if (pred->params.size() != rule.params.size()) {
      error(where + ": expects " + std::to_string(pred->params.size()) + " parameters, has " +
            std::to_string(rule.params.size()));
    }
    const std::set<std::string> params(rule.params.begin(), rule.params.end());
    auto check_ref = [&](const std::string& ref, const std::string& context) {
      if (!ref.empty() && ref.front() == '?') {
        if (!params.count(ref)) {
          error(where + ": " + context + " variable '" + ref + "' is not a rule parameter");
        }
        return;
      }
      if (!profile.find_custom(ref) && !problem.objects.count(ref)) {
        error(where + ": " + context + " references unknown object '" + ref + "'");
      }
    };
    for (const auto& eff : rule.effects) {
      check_ref(eff.target.object, "effect target");
      if (eff.kind == Effect::Kind::Equal) {
        std::vector<std::string> refs;
        collect_expr_refs(eff.expr, refs);
        for (const auto& r : refs) check_ref(r, "expression");
      } else {
        for (const auto& o : eff.call.objects) {
          check_ref(o, std::string(function_name(eff.call.function)) + " object");
        }
      }
    }
  }
  for (const auto& pred : domain.predicates) {
    if (!profile.find_rule(pred.name)) {
      out.insert({Severity::Warning, "predicate '" + pred.name + "' has no animation rule"});
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace planim::profile
