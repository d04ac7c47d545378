#include <sstream>

#include "planim/pddl.hpp"

namespace planim::pddl {

namespace {

void print_typed(std::ostream& out, const std::vector<TypedName>& list) {
  bool first = true;
  for (const auto& t : list) {
    if (!first) out << ' ';
    first = false;
    out << t.name << " - " << t.type;
  }
}

void print_atom(std::ostream& out, const Atom& a) {
  out << '(' << a.predicate;
  for (const auto& arg : a.args) out << ' ' << arg;
  out << ')';
}

}  // namespace

std::string to_pddl(const DomainAst& d) {
  std::ostringstream out;
  out << "(define (domain " << d.name << ")\n";
  if (!d.requirements.empty()) {
    out << "  (:requirements";
    for (Requirement r : d.requirements) out << ' ' << requirement_name(r);
    out << ")\n";
  }
  if (!d.types.empty()) {
    out << "  (:types";
    for (const auto& [type, parent] : d.types) out << ' ' << type << " - " << parent;
    out << ")\n";
  }
  if (!d.constants.empty()) {
    out << "  (:constants";
    for (const auto& [name, type] : d.constants) out << ' ' << name << " - " << type;
    out << ")\n";
  }
  out << "  (:predicates";
  for (const auto& p : d.predicates) {
    out << "\n    (" << p.name;
    if (!p.params.empty()) out << ' ';
    print_typed(out, p.params);
    out << ')';
  }
  out << ")";
  for (const auto& a : d.actions) {
    out << "\n  (:action " << a.name << "\n    :parameters (";
    print_typed(out, a.params);
    out << ")\n    :precondition (and";
    for (const auto& atom : a.precondition) {
      out << ' ';
      print_atom(out, atom);
    }
    for (const auto& eq : a.equalities) {
      out << (eq.negated ? " (not (= " : " (= ") << eq.lhs << ' ' << eq.rhs
          << (eq.negated ? "))" : ")");
    }
    out << ")\n    :effect (and";
    for (const auto& atom : a.add_effects) {
      out << ' ';
      print_atom(out, atom);
    }
    for (const auto& atom : a.del_effects) {
      out << " (not ";
      print_atom(out, atom);
      out << ')';
    }
    out << "))";
  }
  out << ")\n";
  return out.str();
}

std::string to_pddl(const ProblemAst& p) {
  std::ostringstream out;
  out << "(define (problem " << p.name << ")\n";
  out << "  (:domain " << p.domain_name << ")\n";
  out << "  (:objects";
  for (const auto& [name, type] : p.objects) out << ' ' << name << " - " << type;
  out << ")\n  (:init";
  for (const auto& atom : p.init) out << "\n    " << atom.to_string();
  out << ")\n  (:goal (and";
  for (const auto& atom : p.goal) out << ' ' << atom.to_string();
  out << ")))\n";
  return out.str();
}

std::string to_plan_text(const PlanText& plan) {
  std::string out;
  for (const auto& step : plan.steps) out += step.to_string() + "\n";
  return out;
}

}  // namespace planim::pddl
