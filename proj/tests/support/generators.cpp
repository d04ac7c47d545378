#include "generators.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "simulator.hpp"

namespace planim::testing {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

namespace {

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[uniform(rng, 0, v.size() - 1)];
}

bool applicable(const oracle::StringState& state, const pddl::DomainAst& domain,
                const pddl::PlanStep& step, oracle::StringState* next) {
  const pddl::ActionSchema* a = domain.find_action(step.action);
  std::vector<std::pair<std::string, std::string>> sigma;
  for (std::size_t i = 0; i < a->params.size(); ++i) sigma.emplace_back(a->params[i].name, step.args[i]);
  auto ground = [&](const pddl::Atom& atom) {
    std::vector<std::string> args;
    for (const auto& t : atom.args) {
      std::string v = t;
      for (const auto& [k, val] : sigma) {
        if (k == t) v = val;
      }
      args.push_back(v);
    }
    return oracle::atom_text(atom.predicate, args);
  };
  for (const auto& p : a->precondition) {
    if (!state.count(ground(p))) return false;
  }
  *next = state;
  for (const auto& d : a->del_effects) next->erase(ground(d));
  for (const auto& ad : a->add_effects) next->insert(ground(ad));
  return true;
}

GeneratedTask finish(const pddl::DomainAst& domain, std::string text, Rng& rng, bool corrupt) {
  GeneratedTask t;
  t.problem_text = std::move(text);
  t.problem = pddl::parse_problem(t.problem_text, domain);
  t.plan = random_walk(domain, t.problem, rng, uniform(rng, 0, 12));
  if (corrupt) {
    corrupt_plan(t.plan, domain, t.problem, rng);
    t.corrupted = true;
  }
  return t;
}

}  // namespace

std::vector<pddl::PlanStep> all_groundings(const pddl::DomainAst& domain,
                                           const pddl::ProblemAst& problem) {
  std::vector<pddl::PlanStep> out;
  for (const auto& a : domain.actions) {
    std::vector<std::vector<std::string>> choices;
    for (const auto& p : a.params) {
      std::vector<std::string> objs;
      for (const auto& [name, type] : problem.objects) {
        if (domain.is_subtype(type, p.type)) objs.push_back(name);
      }
      choices.push_back(std::move(objs));
    }
    std::vector<std::vector<std::string>> tuples{{}};
    for (const auto& c : choices) {
      std::vector<std::vector<std::string>> grown;
      for (const auto& t : tuples) {
        for (const auto& o : c) {
          auto u = t;
          u.push_back(o);
          grown.push_back(std::move(u));
        }
      }
      tuples = std::move(grown);
    }
    for (auto& t : tuples) out.push_back({a.name, std::move(t)});
  }
  return out;
}

std::vector<pddl::PlanStep> random_walk(const pddl::DomainAst& domain,
                                        const pddl::ProblemAst& problem, Rng& rng,
                                        std::size_t length) {
  const auto ground = all_groundings(domain, problem);
  oracle::StringState state;
  for (const auto& a : problem.init) state.insert(oracle::atom_text(a.predicate, a.args));
  std::vector<pddl::PlanStep> plan;
  for (std::size_t i = 0; i < length; ++i) {
    std::vector<std::pair<pddl::PlanStep, oracle::StringState>> options;
    for (const auto& g : ground) {
      oracle::StringState next;
      if (applicable(state, domain, g, &next)) options.emplace_back(g, std::move(next));
    }
    if (options.empty()) break;
    auto& [step, next] = options[uniform(rng, 0, options.size() - 1)];
    plan.push_back(step);
    state = std::move(next);
  }
  return plan;
}

void corrupt_plan(std::vector<pddl::PlanStep>& plan, const pddl::DomainAst& domain,
                  const pddl::ProblemAst& problem, Rng& rng) {
  std::vector<std::string> objects;
  for (const auto& [name, type] : problem.objects) objects.push_back(name);
  const auto ground = all_groundings(domain, problem);
  if (plan.empty()) {
    plan.push_back(pick(rng, ground));
    return;
  }
  const std::size_t i = uniform(rng, 0, plan.size() - 1);
  switch (uniform(rng, 0, 4)) {
    case 0:
      plan[i] = pick(rng, ground);
      break;
    case 1:
      if (plan.size() > 1) {
        const std::size_t j = uniform(rng, 0, plan.size() - 1);
        std::swap(plan[i], plan[j]);
      } else {
        plan.push_back(plan[0]);
      }
      break;
    case 2:
      plan.erase(plan.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    case 3:
      plan.insert(plan.begin() + static_cast<std::ptrdiff_t>(i), plan[i]);
      break;
    default:
      if (!plan[i].args.empty()) {
        plan[i].args[uniform(rng, 0, plan[i].args.size() - 1)] = pick(rng, objects);
      } else {
        plan[i] = pick(rng, ground);
      }
  }
}

GeneratedTask random_blocksworld(const pddl::DomainAst& domain, Rng& rng, bool corrupt) {
  const std::size_t n = uniform(rng, 2, 6);
  std::vector<std::string> blocks;
  for (std::size_t i = 0; i < n; ++i) blocks.push_back("b" + std::to_string(i));
  auto towers = [&](std::ostringstream& out, bool init) {
    std::vector<std::string> order = blocks;
    std::shuffle(order.begin(), order.end(), rng);
    std::string below;
    for (const auto& b : order) {
      if (below.empty() || uniform(rng, 0, 2) == 0) {
        if (init) out << " (ontable " << b << ")";
      } else {
        out << " (on " << b << " " << below << ")";
      }
      below = b;
    }
    if (init) {
      // A block is clear when nothing was placed on it.
      std::set<std::string> covered;
      std::string text = out.str();
      for (const auto& b : blocks) {
        for (const auto& a : blocks) {
          if (text.find("(on " + a + " " + b + ")") != std::string::npos) covered.insert(b);
        }
      }
      for (const auto& b : blocks) {
        if (!covered.count(b)) out << " (clear " << b << ")";
      }
      out << " (handempty)";
    }
  };
  std::ostringstream init, goal;
  towers(init, true);
  towers(goal, false);
  std::string goal_text = goal.str();
  if (goal_text.empty()) goal_text = " (ontable " + blocks[0] + ")";
  std::ostringstream text;
  text << "(define (problem bw-random) (:domain blocksworld) (:objects";
  for (const auto& b : blocks) text << ' ' << b;
  text << " - block) (:init" << init.str() << ") (:goal (and" << goal_text << ")))";
  return finish(domain, text.str(), rng, corrupt);
}

GeneratedTask random_logistics(const pddl::DomainAst& domain, Rng& rng, bool corrupt) {
  const std::size_t cities = uniform(rng, 1, 3);
  const std::size_t planes = uniform(rng, 1, 2);
  const std::size_t packages = uniform(rng, 1, 4);
  std::ostringstream objs, init, goal;
  std::vector<std::string> places, airports;
  for (std::size_t c = 0; c < cities; ++c) {
    const std::string city = "c" + std::to_string(c);
    const std::string loc = "l" + std::to_string(c);
    const std::string apt = "a" + std::to_string(c);
    const std::string truck = "t" + std::to_string(c);
    objs << ' ' << city << " - city " << loc << " - location " << apt << " - airport " << truck
         << " - truck";
    init << " (in-city " << loc << ' ' << city << ") (in-city " << apt << ' ' << city << ")";
    init << " (at " << truck << ' ' << (uniform(rng, 0, 1) ? loc : apt) << ")";
    places.push_back(loc);
    places.push_back(apt);
    airports.push_back(apt);
  }
  for (std::size_t p = 0; p < planes; ++p) {
    objs << " pl" << p << " - airplane";
    init << " (at pl" << p << ' ' << pick(rng, airports) << ")";
  }
  for (std::size_t k = 0; k < packages; ++k) {
    objs << " p" << k << " - package";
    init << " (at p" << k << ' ' << pick(rng, places) << ")";
    goal << " (at p" << k << ' ' << pick(rng, places) << ")";
  }
  std::ostringstream text;
  text << "(define (problem log-random) (:domain logistics) (:objects" << objs.str()
       << ") (:init" << init.str() << ") (:goal (and" << goal.str() << ")))";
  return finish(domain, text.str(), rng, corrupt);
}

namespace {

VisualObject random_object(Rng& rng, const std::vector<std::string>& sprites) {
  VisualObject o;
  if (uniform(rng, 0, 4) != 0) {
    o.x = static_cast<std::int64_t>(uniform(rng, 0, 400)) - 100;
    o.y = static_cast<std::int64_t>(uniform(rng, 0, 400)) - 100;
  } else if (uniform(rng, 0, 1)) {
    o.x = 5;
  }
  o.width = static_cast<std::int64_t>(uniform(rng, 1, 80));
  o.height = static_cast<std::int64_t>(uniform(rng, 1, 80));
  o.color = Rgb{static_cast<std::uint8_t>(uniform(rng, 0, 255)),
                static_cast<std::uint8_t>(uniform(rng, 0, 255)),
                static_cast<std::uint8_t>(uniform(rng, 0, 255))};
  o.sprite = pick(rng, sprites);
  o.depth = static_cast<std::int64_t>(uniform(rng, 0, 6)) - 3;
  o.showname = uniform(rng, 0, 1) == 1;
  const std::vector<std::string> labels{"a", "Block \"A\"", "ünï", "3", "", "x<y&z"};
  o.label = pick(rng, labels);
  return o;
}

scene::Scene random_scene(Rng& rng, const std::vector<std::string>& names,
                          const std::vector<std::string>& sprites) {
  scene::Scene s;
  for (const auto& n : names) {
    VisualObject o = random_object(rng, sprites);
    if (o.visible()) s.visible.insert(n);
    if (uniform(rng, 0, 2) == 0) s.at_goal.insert(n);
    s.objects.emplace(n, std::move(o));
  }
  const std::size_t lines = uniform(rng, 0, 3);
  for (std::size_t i = 0; i < lines; ++i) {
    LineElement l;
    l.from = pick(rng, names);
    l.to = pick(rng, names);
    l.color = Rgb{static_cast<std::uint8_t>(uniform(rng, 0, 255)), 0, 0};
    l.x1 = static_cast<std::int64_t>(uniform(rng, 0, 50));
    l.y1 = static_cast<std::int64_t>(uniform(rng, 0, 50));
    l.x2 = static_cast<std::int64_t>(uniform(rng, 0, 50));
    l.y2 = static_cast<std::int64_t>(uniform(rng, 0, 50));
    s.lines.push_back(l);
  }
  std::sort(s.lines.begin(), s.lines.end());
  s.lines.erase(std::unique(s.lines.begin(), s.lines.end()), s.lines.end());
  return s;
}

}  // namespace

vfg::VfgDocument random_document(Rng& rng) {
  vfg::VfgDocument d;
  d.metadata.domain_name = "dom" + std::to_string(uniform(rng, 0, 9));
  d.metadata.problem_name = "prob" + std::to_string(uniform(rng, 0, 9));
  d.metadata.seed = rng();
  const std::vector<std::string> sprites{"rectangle", "ellipse", "img-00000000deadbeef"};
  d.sprites = {{"rectangle", "builtin:rectangle"},
               {"ellipse", "builtin:ellipse"},
               {"img-00000000deadbeef", "iVBORw0KGgo="}};
  std::vector<std::string> names;
  const std::size_t n = uniform(rng, 1, 5);
  for (std::size_t i = 0; i < n; ++i) names.push_back("o" + std::to_string(i));
  const std::size_t goals = uniform(rng, 0, 3);
  for (std::size_t g = 0; g < goals; ++g) {
    d.goals.push_back("(on " + pick(rng, names) + " o" + std::to_string(g) + ")");
  }
  d.goal_scene = random_scene(rng, names, sprites);
  const std::size_t steps = uniform(rng, 1, 4);
  for (std::size_t i = 0; i < steps; ++i) {
    vfg::StepRecord s;
    s.index = i;
    s.scene = random_scene(rng, names, sprites);
    if (i > 0) {
      s.action = "(act o" + std::to_string(i) + ")";
      s.preconditions = {"(p o0)"};
      if (uniform(rng, 0, 1)) s.add_effects = {"(q o1)", "(r o0 o1)"};
      if (uniform(rng, 0, 1)) s.del_effects = {"(p o0)"};
      scene::Transition t;
      const std::vector<double> durations{1.0, 0.5, 1.25, 2.0};
      t.duration_seconds = pick(rng, durations);
      const std::size_t ops = uniform(rng, 0, 3);
      for (std::size_t k = 0; k < ops; ++k) {
        scene::TransitionOp op;
        op.object = pick(rng, names);
        op.kind = static_cast<scene::TransitionOp::Kind>(uniform(rng, 0, 3));
        if (op.kind != scene::TransitionOp::Kind::Appear) {
          op.from = {static_cast<std::int64_t>(uniform(rng, 0, 99)), -7};
        }
        if (op.kind != scene::TransitionOp::Kind::Disappear) {
          op.to = {3, static_cast<std::int64_t>(uniform(rng, 0, 99))};
        }
        t.ops.push_back(op);
      }
      s.transition = t;
    }
    for (const auto& g : d.goals) {
      if (uniform(rng, 0, 1)) s.satisfied_subgoals.push_back(g);
    }
    d.steps.push_back(std::move(s));
  }
  return d;
}

}  // namespace planim::testing
