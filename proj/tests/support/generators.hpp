#pragma once

#include <random>
#include <string>
#include <vector>

#include "planim/pddl.hpp"
#include "planim/vfg.hpp"

namespace planim::testing {

using Rng = std::mt19937_64;

struct GeneratedTask {
  std::string problem_text;
  pddl::ProblemAst problem;
  std::vector<pddl::PlanStep> plan;
  bool corrupted = false;
};

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);  // inclusive

/// Type-correct groundings of every action over the problem's objects.
std::vector<pddl::PlanStep> all_groundings(const pddl::DomainAst& domain,
                                           const pddl::ProblemAst& problem);

/// Random applicable walk of up to `length` steps from the initial state.
std::vector<pddl::PlanStep> random_walk(const pddl::DomainAst& domain,
                                        const pddl::ProblemAst& problem, Rng& rng,
                                        std::size_t length);

/// Swaps, drops, duplicates or replaces steps, or swaps in wrong arguments.
void corrupt_plan(std::vector<pddl::PlanStep>& plan, const pddl::DomainAst& domain,
                  const pddl::ProblemAst& problem, Rng& rng);

/// Random towers of 2..6 blocks with a random goal configuration.
GeneratedTask random_blocksworld(const pddl::DomainAst& domain, Rng& rng, bool corrupt);
/// 1..3 cities, 1..2 planes, 1..4 packages.
GeneratedTask random_logistics(const pddl::DomainAst& domain, Rng& rng, bool corrupt);

/// Structurally valid document with random scenes, lines, ops and sprites.
vfg::VfgDocument random_document(Rng& rng);

}  // namespace planim::testing
