#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace planim::pddl {

inline constexpr std::string_view kRootType = "object";

enum class Requirement { Strips, Typing, Equality };

struct TypedName {
  std::string name;
  std::string type;

  bool operator==(const TypedName&) const = default;
};

/// An atom inside a schema. Arguments are variables (`?x`) or constants.
struct Atom {
  std::string predicate;
  std::vector<std::string> args;

  bool operator==(const Atom&) const = default;
};

struct EqualityLiteral {
  std::string lhs;
  std::string rhs;
  bool negated = false;

  bool operator==(const EqualityLiteral&) const = default;
};

struct PredicateSchema {
  std::string name;
  std::vector<TypedName> params;

  bool operator==(const PredicateSchema&) const = default;
};

struct ActionSchema {
  std::string name;
  std::vector<TypedName> params;
  std::vector<Atom> precondition;
  std::vector<EqualityLiteral> equalities;
  std::vector<Atom> add_effects;
  std::vector<Atom> del_effects;

  bool operator==(const ActionSchema&) const = default;
};

struct DomainAst {
  std::string name;
  std::set<Requirement> requirements;
  /// type -> parent; the root type "object" has no entry.
  std::map<std::string, std::string> types;
  std::map<std::string, std::string> constants;
  std::vector<PredicateSchema> predicates;
  std::vector<ActionSchema> actions;

  bool operator==(const DomainAst&) const = default;

  const PredicateSchema* find_predicate(std::string_view name) const;
  const ActionSchema* find_action(std::string_view name) const;
  bool has_type(std::string_view type) const;
  /// Reflexive: every type is a subtype of itself, and of "object".
  bool is_subtype(std::string_view type, std::string_view ancestor) const;
};

struct GroundAtom {
  std::string predicate;
  std::vector<std::string> args;

  auto operator<=>(const GroundAtom&) const = default;
  bool operator==(const GroundAtom&) const = default;

  /// "(pred a b)"
  std::string to_string() const;
};

using AtomSet = std::set<GroundAtom>;

struct ProblemAst {
  std::string name;
  std::string domain_name;
  /// object -> type, domain constants included.
  std::map<std::string, std::string> objects;
  AtomSet init;
  /// Positive conjunction in file order, duplicates removed.
  std::vector<GroundAtom> goal;

  bool operator==(const ProblemAst&) const = default;

  AtomSet goal_set() const { return {goal.begin(), goal.end()}; }
};

struct PlanStep {
  std::string action;
  std::vector<std::string> args;

  bool operator==(const PlanStep&) const = default;

  std::string to_string() const;
};

struct PlanText {
  std::vector<PlanStep> steps;

  bool operator==(const PlanText&) const = default;
};

DomainAst parse_domain(std::string_view source);
ProblemAst parse_problem(std::string_view source, const DomainAst& domain);
PlanText parse_plan(std::string_view source, const DomainAst& domain);

/// Parses "(pred a b)" into a ground atom without any domain checks.
GroundAtom parse_ground_atom(std::string_view text);

std::string to_pddl(const DomainAst& domain);
std::string to_pddl(const ProblemAst& problem);
std::string to_plan_text(const PlanText& plan);

std::string_view requirement_name(Requirement r);

}  // namespace planim::pddl
