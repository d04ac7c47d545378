#include <doctest.h>

#include "fixtures.hpp"
#include "planim/pddl.hpp"
#include "planim/sexpr.hpp"
#include "test_util.hpp"

using namespace planim;
using namespace planim::pddl;
using planim::testing::contains;
using planim::testing::error_of;
using planim::testing::load_fixture;

namespace {

const char* kTyped = R"(
(define (domain d)
  (:requirements :strips :typing)
  (:types truck - vehicle vehicle place)
  (:constants depot - place)
  (:predicates (at ?v - vehicle ?p - place) (free ?p - place))
  (:action go
    :parameters (?v - truck ?from ?to - place)
    :precondition (and (at ?v ?from) (free ?to))
    :effect (and (at ?v ?to) (not (at ?v ?from)))))
)";

}  // namespace

TEST_CASE("typed domain parses types, constants and schemas") {
  DomainAst d = parse_domain(kTyped);
  CHECK(d.name == "d");
  CHECK(d.requirements == std::set<Requirement>{Requirement::Strips, Requirement::Typing});
  CHECK(d.types.at("truck") == "vehicle");
  CHECK(d.types.at("vehicle") == "object");
  CHECK(d.is_subtype("truck", "vehicle"));
  CHECK(d.is_subtype("truck", "object"));
  CHECK_FALSE(d.is_subtype("vehicle", "truck"));
  CHECK(d.constants.at("depot") == "place");
  const ActionSchema* go = d.find_action("go");
  REQUIRE(go);
  CHECK(go->params.size() == 3);
  CHECK(go->params[1].type == "place");
  CHECK(go->add_effects.size() == 1);
  CHECK(go->del_effects.size() == 1);
}

TEST_CASE("problem merges constants and checks atoms") {
  DomainAst d = parse_domain(kTyped);
  ProblemAst p = parse_problem(R"(
    (define (problem p) (:domain d)
      (:objects t1 - truck home - place)
      (:init (at t1 home) (free depot))
      (:goal (and (at t1 depot) (at t1 depot))))
  )",
                               d);
  CHECK(p.objects.at("depot") == "place");
  CHECK(p.objects.at("t1") == "truck");
  CHECK(p.init.size() == 2);
  CHECK(p.goal.size() == 1);
}

TEST_CASE("unsupported features are rejected by name") {
  auto domain_with = [](const std::string& req, const std::string& pre) {
    return "(define (domain d) (:requirements " + req +
           ") (:predicates (p ?x)) (:action a :parameters (?x) :precondition " + pre +
           " :effect (p ?x)))";
  };
  CHECK(contains(error_of([&] { parse_domain(domain_with(":strips :adl", "(p ?x)")); }),
                 "unsupported requirement :adl"));
  CHECK(contains(error_of([&] { parse_domain(domain_with(":strips", "(not (p ?x))")); }),
                 "negative"));
  CHECK(contains(error_of([&] { parse_domain(domain_with(":strips", "(or (p ?x) (p ?x))")); }),
                 "unsupported"));
  CHECK(contains(error_of([&] { parse_domain(domain_with(":strips", "(q ?x)")); }),
                 "unknown predicate 'q'"));
  CHECK(contains(error_of([&] { parse_domain(domain_with(":strips", "(p ?y)")); }),
                 "undeclared"));
  CHECK(contains(
      error_of([] { parse_domain("(define (domain d) (:requirements :strips) (:functions (f)))"); }),
      "unsupported domain section :functions"));
}

TEST_CASE("type errors in problems") {
  DomainAst d = parse_domain(kTyped);
  auto problem = [&](const std::string& init) {
    return parse_problem("(define (problem p) (:domain d) (:objects t1 - truck h - place) (:init " +
                             init + ") (:goal (and (free h))))",
                         d);
  };
  CHECK(contains(error_of([&] { problem("(at h t1)"); }), "type mismatch"));
  CHECK(contains(error_of([&] { problem("(at t1 nowhere)"); }), "undeclared object 'nowhere'"));
  CHECK(contains(error_of([&] { problem("(free h h)"); }), "expects 1"));
  CHECK(contains(error_of([&] {
                   parse_problem("(define (problem p) (:domain other) (:objects) (:init) (:goal (and)))", d);
                 }),
                 "domain 'other'"));
  CHECK(contains(error_of([&] {
                   parse_problem(
                       "(define (problem p) (:domain d) (:objects h - place) (:init) (:goal (not (free h))))",
                       d);
                 }),
                 "unsupported goal: negation"));
}

TEST_CASE("plan text: comments, step numbers, case and errors with line numbers") {
  DomainAst d = parse_domain(kTyped);
  PlanText p = parse_plan("; plan\n0: (GO t1 a b)\n\n(go t1 b c) ; again\n", d);
  REQUIRE(p.steps.size() == 2);
  CHECK(p.steps[0].to_string() == "(go t1 a b)");
  CHECK(p.steps[1].args == std::vector<std::string>{"t1", "b", "c"});
  std::string err = error_of([&] { parse_plan("(go t1 a b)\n(fly t1)\n", d); });
  CHECK(contains(err, "2:"));
  CHECK(contains(err, "unknown action 'fly'"));
  CHECK(contains(error_of([&] { parse_plan("(go t1 a)", d); }), "expects 3"));
}

TEST_CASE("equality requirement") {
  DomainAst d = parse_domain(R"(
    (define (domain e) (:requirements :strips :equality)
      (:predicates (p ?x) (q ?x ?y))
      (:action a :parameters (?x ?y)
        :precondition (and (p ?x) (not (= ?x ?y)))
        :effect (q ?x ?y)))
  )");
  const ActionSchema* a = d.find_action("a");
  REQUIRE(a);
  REQUIRE(a->equalities.size() == 1);
  CHECK(a->equalities[0].negated);
}

TEST_CASE("parse and print round-trip on every fixture") {
  for (const auto& name : planim::testing::kFixtureNames) {
    CAPTURE(name);
    auto f = load_fixture(name);
    const DomainAst again = parse_domain(to_pddl(f.domain));
    CHECK(again == f.domain);
    const ProblemAst p2 = parse_problem(to_pddl(f.problem), again);
    CHECK(p2 == f.problem);
    CHECK(parse_plan(to_plan_text(f.plan), f.domain) == f.plan);
    CHECK(to_pddl(again) == to_pddl(f.domain));
  }
}

TEST_CASE("ground atom text") {
  CHECK(GroundAtom{"on", {"a", "b"}}.to_string() == "(on a b)");
  CHECK(GroundAtom{"handempty", {}}.to_string() == "(handempty)");
  CHECK(parse_ground_atom("(On A  B)") == GroundAtom{"on", {"a", "b"}});
}
