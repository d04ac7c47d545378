#pragma once

#include <map>
#include <set>
#include <string>

#include "planim/pddl.hpp"
#include "planim/profile.hpp"

namespace planim::oracle {

struct ScanResult {
  /// group key -> members
  std::map<std::string, std::set<std::string>> groups;
  /// O(f, p, s): every object the call's references bind to, over all true
  /// instantiations of p.
  std::set<std::string> objects;
  /// Bound object tuples, one per instantiation.
  std::set<std::vector<std::string>> bindings;
};

/// Walks every atom of the state and groups instantiations of the rule's
/// predicate by the grouping rule, with no indexing shortcuts.
ScanResult scan_objects(const profile::FunctionCall& call, const profile::PropertyRef& target,
                        const profile::PredicateRule& rule, const pddl::AtomSet& state);

}  // namespace planim::oracle
