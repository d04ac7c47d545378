#include <doctest.h>

#include "fixtures.hpp"
#include "planim/plan.hpp"
#include "simulator.hpp"
#include "test_util.hpp"

using namespace planim;
using namespace planim::plan;
using planim::testing::contains;
using planim::testing::error_of;
using planim::testing::load_fixture;

namespace {

std::set<std::string> strings(const AtomSet& s) {
  std::set<std::string> out;
  for (const auto& a : s) out.insert(a.to_string());
  return out;
}

}  // namespace

TEST_CASE("blocksworld fixture trajectory") {
  auto f = load_fixture("blocksworld");
  Trajectory t = execute_plan(f.domain, f.problem, f.plan);
  REQUIRE(t.states.size() == 5);
  REQUIRE(t.actions.size() == 4);
  CHECK(t.actions[0].to_string() == "(pick-up b)");
  CHECK(strings(t.actions[0].pre) ==
        std::set<std::string>{"(clear b)", "(handempty)", "(ontable b)"});
  CHECK(strings(t.states[1]) == std::set<std::string>{"(clear a)", "(clear c)", "(holding b)",
                                                      "(ontable a)", "(ontable c)"});
  for (const auto& g : f.problem.goal) CHECK(t.states.back().count(g));
}

TEST_CASE("frame property holds on every step of every fixture") {
  for (const auto& name : planim::testing::kFixtureNames) {
    CAPTURE(name);
    auto f = load_fixture(name);
    Trajectory t = execute_plan(f.domain, f.problem, f.plan);
    for (std::size_t i = 0; i < t.actions.size(); ++i) {
      AtomSet universe = t.states[i];
      universe.insert(t.states[i + 1].begin(), t.states[i + 1].end());
      universe.insert(t.actions[i].add.begin(), t.actions[i].add.end());
      for (const auto& p : universe) {
        const bool expected = t.actions[i].add.count(p) ||
                              (t.states[i].count(p) && !t.actions[i].del.count(p));
        CHECK(static_cast<bool>(t.states[i + 1].count(p)) == expected);
      }
    }
  }
}

TEST_CASE("missing precondition names the step and atoms") {
  auto f = load_fixture("blocksworld");
  auto bad = pddl::parse_plan(planim::testing::read_text(planim::testing::fixture_path(
                                  "blocksworld", "invalid-plan.txt")),
                              f.domain);
  try {
    execute_plan(f.domain, f.problem, bad);
    FAIL("expected a PlanError");
  } catch (const PlanError& e) {
    CHECK(e.kind() == PlanError::Kind::Precondition);
    CHECK(e.step() == 1);
    CHECK(e.action() == "(pick-up a)");
    CHECK(e.missing() == std::vector<std::string>{"(handempty)"});
  }
}

TEST_CASE("grounding errors") {
  auto f = load_fixture("logistics");
  auto step = [](std::string a, std::vector<std::string> args) {
    return pddl::PlanStep{std::move(a), std::move(args)};
  };
  CHECK(contains(error_of([&] { ground_step(f.domain, f.problem, step("load-truck", {"pk1", "pl", "l1"})); }),
                 "does not match"));
  CHECK(contains(error_of([&] { ground_step(f.domain, f.problem, step("load-truck", {"pk1", "zz", "l1"})); }),
                 "unknown object 'zz'"));
  try {
    execute_plan(f.domain, f.problem, pddl::PlanText{{step("drive-truck", {"t1", "l1", "a1", "c1"}),
                                                      step("fly-airplane", {"t1", "a1", "a2"})}});
    FAIL("expected a PlanError");
  } catch (const PlanError& e) {
    CHECK(e.kind() == PlanError::Kind::Grounding);
    CHECK(e.step() == 1);
  }
}

TEST_CASE("add wins over delete for the same atom") {
  auto d = pddl::parse_domain(R"(
    (define (domain t) (:requirements :strips)
      (:predicates (p ?x))
      (:action flip :parameters (?x ?y)
        :precondition (p ?x)
        :effect (and (p ?y) (not (p ?x)))))
  )");
  auto p = pddl::parse_problem("(define (problem q) (:domain t) (:objects a) (:init (p a)) (:goal (and (p a))))", d);
  GroundAction g = ground_step(d, p, {"flip", {"a", "a"}});
  CHECK(g.add.count({"p", {"a"}}));
  CHECK(g.del.empty());
  CHECK(plan::apply(p.init, g) == p.init);
}

TEST_CASE("equality literals are evaluated at grounding") {
  auto d = pddl::parse_domain(R"(
    (define (domain e) (:requirements :strips :equality)
      (:predicates (p ?x) (q ?x ?y))
      (:action a :parameters (?x ?y)
        :precondition (and (p ?x) (not (= ?x ?y)))
        :effect (q ?x ?y)))
  )");
  auto p = pddl::parse_problem("(define (problem q) (:domain e) (:objects a b) (:init (p a)) (:goal (and (q a b))))", d);
  CHECK_NOTHROW(execute_plan(d, p, pddl::PlanText{{{"a", {"a", "b"}}}}));
  try {
    execute_plan(d, p, pddl::PlanText{{{"a", {"a", "a"}}}});
    FAIL("expected a PlanError");
  } catch (const PlanError& e) {
    CHECK(e.missing() == std::vector<std::string>{"(not (= a a))"});
  }
}

TEST_CASE("goal report and at-goal objects") {
  auto f = load_fixture("blocksworld");
  Trajectory t = execute_plan(f.domain, f.problem, f.plan);
  SubgoalTable r = goal_report(t, f.problem.goal);
  REQUIRE(r.goals.size() == 2);
  CHECK(r.goals[0].to_string() == "(on a b)");
  CHECK(r.rows[0] == std::vector<std::size_t>{4});
  CHECK(r.rows[1] == std::vector<std::size_t>{2, 3, 4});
  CHECK(r.satisfied[0].empty());
  CHECK(r.satisfied[2] == std::vector<pddl::GroundAtom>{{"on", {"b", "c"}}});
  CHECK(at_goal_objects(t.states[0], f.problem.goal).empty());
  // b and c appear only in (on b c) ... b also in (on a b), which fails at state 2.
  CHECK(at_goal_objects(t.states[2], f.problem.goal) == std::set<std::string>{"c"});
  CHECK(at_goal_objects(t.states[4], f.problem.goal) == std::set<std::string>{"a", "b", "c"});
}

TEST_CASE("engine agrees with the string simulator on the fixtures") {
  for (const auto& name : planim::testing::kFixtureNames) {
    CAPTURE(name);
    auto f = load_fixture(name);
    auto sim = oracle::simulate(f.domain, f.problem, f.plan.steps);
    REQUIRE(sim.valid);
    Trajectory t = execute_plan(f.domain, f.problem, f.plan);
    REQUIRE(t.states.size() == sim.states.size());
    for (std::size_t i = 0; i < t.states.size(); ++i) CHECK(strings(t.states[i]) == sim.states[i]);
  }
}
