#include <algorithm>
#include <cctype>
#include <sstream>

#include "planim/pddl.hpp"
#include "planim/sexpr.hpp"

namespace planim::pddl {

namespace {

[[noreturn]] void fail(const std::string& message, const SExpr& at) { throw ParseError(message, at.loc); }

bool is_variable(std::string_view s) { return !s.empty() && s.front() == '?'; }

const std::string& expect_symbol(const SExpr& e, std::string_view what) {
  if (!e.is_symbol()) fail("expected " + std::string(what), e);
  return e.text;
}

// (define (<kind> <name>) sections...)
std::string read_header(const SExpr& top, std::string_view kind) {
  if (!top.is_form("define") || top.items.size() < 2) {
    fail("expected (define (" + std::string(kind) + " <name>) ...)", top);
  }
  const SExpr& head = top.items[1];
  if (!head.is_form(kind) || head.items.size() != 2) {
    fail("expected (" + std::string(kind) + " <name>)", head);
  }
  return expect_symbol(head.items[1], std::string(kind) + " name");
}

/// `a b - t c` -> [(a,t), (b,t), (c,object)]
std::vector<TypedName> read_typed_list(const std::vector<SExpr>& items, std::size_t begin,
                                       bool variables) {
  std::vector<TypedName> out;
  std::size_t pending = 0;
  for (std::size_t i = begin; i < items.size(); ++i) {
    const SExpr& item = items[i];
    if (item.is_symbol("-")) {
      if (i + 1 >= items.size()) fail("type expected after '-'", item);
      const SExpr& type = items[i + 1];
      if (type.is_form("either")) fail("unsupported type expression: either", type);
      const std::string& type_name = expect_symbol(type, "type name");
      if (pending == 0) fail("'-' without preceding names", item);
      for (std::size_t k = out.size() - pending; k < out.size(); ++k) out[k].type = type_name;
      pending = 0;
      ++i;
      continue;
    }
    const std::string& name = expect_symbol(item, variables ? "variable" : "name");
    if (variables != is_variable(name)) {
      fail(variables ? "expected a ?variable, got '" + name + "'"
                     : "unexpected variable '" + name + "'",
           item);
    }
    out.push_back({name, std::string(kRootType)});
    ++pending;
  }
  return out;
}

Requirement parse_requirement(const SExpr& e) {
  const std::string& flag = expect_symbol(e, "requirement flag");
  if (flag == ":strips") return Requirement::Strips;
  if (flag == ":typing") return Requirement::Typing;
  if (flag == ":equality") return Requirement::Equality;
  fail("unsupported requirement " + flag, e);
}

Atom read_atom(const SExpr& e) {
  if (!e.is_list() || e.items.empty()) fail("expected an atom", e);
  Atom atom;
  atom.predicate = expect_symbol(e.items[0], "predicate name");
  if (atom.predicate == "=" || atom.predicate == "not" || atom.predicate == "and") {
    fail("unexpected '" + atom.predicate + "'", e);
  }
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    atom.args.push_back(expect_symbol(e.items[i], "argument"));
  }
  return atom;
}

void reject_unsupported_connective(const SExpr& e, std::string_view where) {
  static const char* kConnectives[] = {"or", "imply", "exists", "forall", "when", "increase",
                                       "decrease", "assign", "scale-up", "scale-down"};
  for (const char* c : kConnectives) {
    if (e.is_form(c)) fail("unsupported " + std::string(where) + ": " + c, e);
  }
}

struct SchemaBody {
  std::vector<Atom> precondition;
  std::vector<EqualityLiteral> equalities;
  std::vector<Atom> add;
  std::vector<Atom> del;
};

void read_precondition(const SExpr& e, SchemaBody& body) {
  if (e.is_list() && e.items.empty()) return;
  if (e.is_form("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) read_precondition(e.items[i], body);
    return;
  }
  reject_unsupported_connective(e, "precondition");
  if (e.is_form("=")) {
    if (e.items.size() != 3) fail("equality takes two arguments", e);
    body.equalities.push_back(
        {expect_symbol(e.items[1], "term"), expect_symbol(e.items[2], "term"), false});
    return;
  }
  if (e.is_form("not")) {
    if (e.items.size() != 2) fail("malformed negation", e);
    const SExpr& inner = e.items[1];
    if (inner.is_form("=") && inner.items.size() == 3) {
      body.equalities.push_back(
          {expect_symbol(inner.items[1], "term"), expect_symbol(inner.items[2], "term"), true});
      return;
    }
    fail("unsupported precondition: negative literal", e);
  }
  body.precondition.push_back(read_atom(e));
}

void read_effect(const SExpr& e, SchemaBody& body) {
  if (e.is_list() && e.items.empty()) return;
  if (e.is_form("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) read_effect(e.items[i], body);
    return;
  }
  reject_unsupported_connective(e, "effect");
  if (e.is_form("not")) {
    if (e.items.size() != 2) fail("malformed negation", e);
    body.del.push_back(read_atom(e.items[1]));
    return;
  }
  body.add.push_back(read_atom(e));
}

struct PendingAction {
  ActionSchema schema;
  const SExpr* source;
};

ActionSchema read_action(const SExpr& e) {
  if (e.items.size() < 2) fail("action name expected", e);
  ActionSchema action;
  action.name = expect_symbol(e.items[1], "action name");
  SchemaBody body;
  for (std::size_t i = 2; i < e.items.size(); i += 2) {
    const std::string& key = expect_symbol(e.items[i], "action keyword");
    if (i + 1 >= e.items.size()) fail("missing value for " + key, e.items[i]);
    const SExpr& value = e.items[i + 1];
    if (key == ":parameters") {
      if (!value.is_list()) fail("parameter list expected", value);
      action.params = read_typed_list(value.items, 0, true);
    } else if (key == ":precondition") {
      read_precondition(value, body);
    } else if (key == ":effect") {
      read_effect(value, body);
    } else {
      fail("unsupported action keyword " + key, e.items[i]);
    }
  }
  action.precondition = std::move(body.precondition);
  action.equalities = std::move(body.equalities);
  action.add_effects = std::move(body.add);
  action.del_effects = std::move(body.del);
  return action;
}

void check_types_acyclic(const DomainAst& d, const SExpr& at) {
  for (const auto& [type, parent] : d.types) {
    std::set<std::string> seen{type};
    std::string cur = parent;
    while (cur != kRootType) {
      if (!seen.insert(cur).second) fail("cyclic type hierarchy involving '" + type + "'", at);
      auto it = d.types.find(cur);
      if (it == d.types.end()) break;
      cur = it->second;
    }
  }
}

void require_type(const DomainAst& d, const std::string& type, const SExpr& at) {
  if (!d.has_type(type)) fail("undeclared type '" + type + "'", at);
}

void check_schema_atom(const DomainAst& d, const Atom& atom, const std::set<std::string>& vars,
                       const std::string& action, const SExpr& at) {
  const PredicateSchema* pred = d.find_predicate(atom.predicate);
  if (!pred) fail("action '" + action + "' uses unknown predicate '" + atom.predicate + "'", at);
  if (pred->params.size() != atom.args.size()) {
    fail("action '" + action + "': predicate '" + atom.predicate + "' expects " +
             std::to_string(pred->params.size()) + " arguments, got " +
             std::to_string(atom.args.size()),
         at);
  }
  for (const std::string& arg : atom.args) {
    if (is_variable(arg) ? !vars.count(arg) : !d.constants.count(arg)) {
      fail("action '" + action + "' references undeclared " +
               std::string(is_variable(arg) ? "variable" : "constant") + " '" + arg + "'",
           at);
    }
  }
}

void validate_action(const DomainAst& d, const ActionSchema& a, const SExpr& at) {
  std::set<std::string> vars;
  for (const TypedName& p : a.params) {
    if (!vars.insert(p.name).second) fail("duplicate parameter '" + p.name + "'", at);
    require_type(d, p.type, at);
  }
  for (const Atom& atom : a.precondition) check_schema_atom(d, atom, vars, a.name, at);
  for (const Atom& atom : a.add_effects) check_schema_atom(d, atom, vars, a.name, at);
  for (const Atom& atom : a.del_effects) check_schema_atom(d, atom, vars, a.name, at);
  for (const EqualityLiteral& eq : a.equalities) {
    for (const std::string& t : {eq.lhs, eq.rhs}) {
      if (is_variable(t) ? !vars.count(t) : !d.constants.count(t)) {
        fail("action '" + a.name + "' references undeclared term '" + t + "'", at);
      }
    }
  }
  for (const Atom& atom : a.add_effects) {
    if (std::find(a.del_effects.begin(), a.del_effects.end(), atom) != a.del_effects.end()) {
      fail("action '" + a.name + "' both adds and deletes (" + atom.predicate + " ...)", at);
    }
  }
}

GroundAtom check_ground_atom(const DomainAst& d, const std::map<std::string, std::string>& objects,
                             const SExpr& e) {
  Atom raw = read_atom(e);
  const PredicateSchema* pred = d.find_predicate(raw.predicate);
  if (!pred) fail("unknown predicate '" + raw.predicate + "'", e);
  if (pred->params.size() != raw.args.size()) {
    fail("predicate '" + raw.predicate + "' expects " + std::to_string(pred->params.size()) +
             " arguments, got " + std::to_string(raw.args.size()),
         e);
  }
  for (std::size_t i = 0; i < raw.args.size(); ++i) {
    const std::string& obj = raw.args[i];
    if (is_variable(obj)) fail("variable '" + obj + "' in ground atom", e);
    auto it = objects.find(obj);
    if (it == objects.end()) fail("undeclared object '" + obj + "'", e);
    if (!d.is_subtype(it->second, pred->params[i].type)) {
      fail("type mismatch: '" + obj + "' is " + it->second + ", predicate '" + raw.predicate +
               "' expects " + pred->params[i].type,
           e);
    }
  }
  return {raw.predicate, raw.args};
}

void read_goal(const DomainAst& d, const std::map<std::string, std::string>& objects,
               const SExpr& e, std::vector<GroundAtom>& goal) {
  if (e.is_list() && e.items.empty()) return;
  if (e.is_form("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) read_goal(d, objects, e.items[i], goal);
    return;
  }
  if (e.is_form("not")) fail("unsupported goal: negation", e);
  if (e.is_form("or")) fail("unsupported goal: disjunction", e);
  reject_unsupported_connective(e, "goal");
  GroundAtom atom = check_ground_atom(d, objects, e);
  if (std::find(goal.begin(), goal.end(), atom) == goal.end()) goal.push_back(std::move(atom));
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

const PredicateSchema* DomainAst::find_predicate(std::string_view n) const {
  for (const auto& p : predicates) {
    if (p.name == n) return &p;
  }
  return nullptr;
}

const ActionSchema* DomainAst::find_action(std::string_view n) const {
  for (const auto& a : actions) {
    if (a.name == n) return &a;
  }
  return nullptr;
}

bool DomainAst::has_type(std::string_view type) const {
  return type == kRootType || types.count(std::string(type)) > 0;
}

bool DomainAst::is_subtype(std::string_view type, std::string_view ancestor) const {
  if (ancestor == kRootType) return true;
  std::string cur(type);
  for (std::size_t guard = 0; guard <= types.size(); ++guard) {
    if (cur == ancestor) return true;
    auto it = types.find(cur);
    if (it == types.end()) return false;
    cur = it->second;
  }
  return false;
}

std::string GroundAtom::to_string() const {
  std::string s = "(" + predicate;
  for (const auto& a : args) s += " " + a;
  return s + ")";
}

std::string PlanStep::to_string() const {
  std::string s = "(" + action;
  for (const auto& a : args) s += " " + a;
  return s + ")";
}

std::string_view requirement_name(Requirement r) {
  switch (r) {
    case Requirement::Strips: return ":strips";
    case Requirement::Typing: return ":typing";
    case Requirement::Equality: return ":equality";
  }
  return "";
}

DomainAst parse_domain(std::string_view source) {
  const SExpr top = read_single_sexpr(source);
  DomainAst d;
  d.name = read_header(top, "domain");

  std::vector<std::pair<const SExpr*, std::vector<TypedName>>> pending_constants;
  std::vector<std::pair<const SExpr*, PredicateSchema>> pending_predicates;
  std::vector<PendingAction> pending_actions;

  for (std::size_t i = 2; i < top.items.size(); ++i) {
    const SExpr& section = top.items[i];
    if (!section.is_list() || section.items.empty() || !section.items[0].is_symbol()) {
      fail("malformed domain section", section);
    }
    const std::string& key = section.items[0].text;
    if (key == ":requirements") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        d.requirements.insert(parse_requirement(section.items[k]));
      }
    } else if (key == ":types") {
      for (const TypedName& t : read_typed_list(section.items, 1, false)) {
        if (t.name == kRootType) continue;
        d.types[t.name] = t.type;
      }
    } else if (key == ":constants") {
      pending_constants.emplace_back(&section, read_typed_list(section.items, 1, false));
    } else if (key == ":predicates") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        const SExpr& p = section.items[k];
        if (!p.is_list() || p.items.empty()) fail("malformed predicate", p);
        PredicateSchema schema;
        schema.name = expect_symbol(p.items[0], "predicate name");
        schema.params = read_typed_list(p.items, 1, true);
        pending_predicates.emplace_back(&p, std::move(schema));
      }
    } else if (key == ":action") {
      pending_actions.push_back({read_action(section), &section});
    } else {
      fail("unsupported domain section " + key, section);
    }
  }

  // Parents that only appear on the right of '-' are implicitly declared.
  std::vector<std::string> implicit;
  for (const auto& [type, parent] : d.types) {
    if (parent != kRootType && !d.types.count(parent)) implicit.push_back(parent);
  }
  for (const auto& t : implicit) d.types.emplace(t, std::string(kRootType));
  check_types_acyclic(d, top);

  for (const auto& [at, list] : pending_constants) {
    for (const TypedName& c : list) {
      require_type(d, c.type, *at);
      auto [it, fresh] = d.constants.emplace(c.name, c.type);
      if (!fresh && it->second != c.type) fail("constant '" + c.name + "' redeclared", *at);
    }
  }
  for (auto& [at, schema] : pending_predicates) {
    if (d.find_predicate(schema.name)) fail("duplicate predicate '" + schema.name + "'", *at);
    std::set<std::string> vars;
    for (const TypedName& p : schema.params) {
      if (!vars.insert(p.name).second) fail("duplicate variable '" + p.name + "'", *at);
      require_type(d, p.type, *at);
    }
    d.predicates.push_back(std::move(schema));
  }
  for (auto& pa : pending_actions) {
    if (d.find_action(pa.schema.name)) fail("duplicate action '" + pa.schema.name + "'", *pa.source);
    validate_action(d, pa.schema, *pa.source);
    d.actions.push_back(std::move(pa.schema));
  }
  return d;
}

ProblemAst parse_problem(std::string_view source, const DomainAst& domain) {
  const SExpr top = read_single_sexpr(source);
  ProblemAst p;
  p.name = read_header(top, "problem");
  p.objects = domain.constants;

  const SExpr* init_section = nullptr;
  const SExpr* goal_section = nullptr;
  for (std::size_t i = 2; i < top.items.size(); ++i) {
    const SExpr& section = top.items[i];
    if (!section.is_list() || section.items.empty() || !section.items[0].is_symbol()) {
      fail("malformed problem section", section);
    }
    const std::string& key = section.items[0].text;
    if (key == ":domain") {
      if (section.items.size() != 2) fail("malformed :domain", section);
      p.domain_name = expect_symbol(section.items[1], "domain name");
      if (p.domain_name != domain.name) {
        fail("problem is for domain '" + p.domain_name + "', not '" + domain.name + "'", section);
      }
    } else if (key == ":requirements") {
      for (std::size_t k = 1; k < section.items.size(); ++k) parse_requirement(section.items[k]);
    } else if (key == ":objects") {
      for (const TypedName& o : read_typed_list(section.items, 1, false)) {
        require_type(domain, o.type, section);
        auto [it, fresh] = p.objects.emplace(o.name, o.type);
        if (!fresh && it->second != o.type) {
          fail("object '" + o.name + "' redeclared with type " + o.type, section);
        }
      }
    } else if (key == ":init") {
      init_section = &section;
    } else if (key == ":goal") {
      goal_section = &section;
    } else {
      fail("unsupported problem section " + key, section);
    }
  }
  if (p.domain_name.empty()) fail("missing (:domain ...)", top);
  if (init_section) {
    for (std::size_t k = 1; k < init_section->items.size(); ++k) {
      const SExpr& e = init_section->items[k];
      if (e.is_form("not") || e.is_form("=")) fail("unsupported init literal", e);
      p.init.insert(check_ground_atom(domain, p.objects, e));
    }
  }
  if (goal_section) {
    if (goal_section->items.size() > 2) fail("malformed :goal", *goal_section);
    if (goal_section->items.size() == 2) read_goal(domain, p.objects, goal_section->items[1], p.goal);
  }
  return p;
}

PlanText parse_plan(std::string_view source, const DomainAst& domain) {
  PlanText plan;
  std::istringstream in{std::string(source)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find(';'));
    line = trim(line);
    if (line.empty()) continue;
    // Optional "N:" step index.
    std::size_t colon = line.find(':');
    if (colon != std::string::npos && line.front() != '(') {
      std::string index = trim(std::string_view(line).substr(0, colon));
      bool numeric = !index.empty() && std::all_of(index.begin(), index.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
      });
      if (!numeric) throw ParseError("malformed plan step", Location{line_no, 1});
      line = trim(std::string_view(line).substr(colon + 1));
    }
    if (line.size() < 2 || line.front() != '(' || line.back() != ')') {
      throw ParseError("malformed plan step", Location{line_no, 1});
    }
    std::vector<SExpr> parsed;
    try {
      parsed = read_sexprs(line);
    } catch (const ParseError&) {
      throw ParseError("malformed plan step", Location{line_no, 1});
    }
    if (parsed.size() != 1 || !parsed[0].is_list() || parsed[0].items.empty()) {
      throw ParseError("malformed plan step", Location{line_no, 1});
    }
    PlanStep step;
    for (std::size_t i = 0; i < parsed[0].items.size(); ++i) {
      const SExpr& item = parsed[0].items[i];
      if (!item.is_symbol()) throw ParseError("malformed plan step", Location{line_no, 1});
      if (i == 0) {
        step.action = item.text;
      } else {
        step.args.push_back(item.text);
      }
    }
    const ActionSchema* schema = domain.find_action(step.action);
    if (!schema) throw ParseError("unknown action '" + step.action + "'", Location{line_no, 1});
    if (schema->params.size() != step.args.size()) {
      throw ParseError("action '" + step.action + "' expects " +
                           std::to_string(schema->params.size()) + " arguments, got " +
                           std::to_string(step.args.size()),
                       Location{line_no, 1});
    }
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

GroundAtom parse_ground_atom(std::string_view text) {
  SExpr e = read_single_sexpr(text);
  Atom a = read_atom(e);
  return {a.predicate, a.args};
}

}  // namespace planim::pddl
