#include <sstream>

#include "planim/profile.hpp"

namespace planim::profile {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out + "\"";
}

std::string literal_text(const Literal& lit) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(Rgb c) const { return c.hex(); }
    std::string operator()(RandomColor) const { return "random"; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return quote(s); }
  };
  return std::visit(Visitor{}, lit);
}

std::string ref_text(const PropertyRef& r) {
  return "(" + r.object + " " + std::string(property_name(r.property)) + ")";
}

std::string expr_text(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Literal: return literal_text(e.literal);
    case Expr::Kind::Property: return ref_text(e.ref);
    case Expr::Kind::Add: {
      std::string s = "(add";
      for (const auto& op : e.operands) s += " " + expr_text(op);
      return s + ")";
    }
  }
  return "";
}

std::string setting_text(const Setting& s) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(const Rational& r) const { return r.to_string(); }
    std::string operator()(Rgb c) const { return c.hex(); }
    std::string operator()(const std::string& t) const { return t; }
  };
  return std::visit(Visitor{}, s);
}

void print_spec(std::ostream& out, const ObjectSpec& spec) {
  out << "\n    (" << spec.target;
  for (const auto& [prop, value] : spec.properties) {
    out << " (:" << property_name(prop) << ' ' << literal_text(value) << ')';
  }
  out << ')';
}

}  // namespace

std::string to_profile_text(const AnimationProfile& profile) {
  std::ostringstream out;
  out << "(define (animation " << profile.name << ")";
  if (!profile.object_specs.empty()) {
    out << "\n  (:objects";
    for (const auto& spec : profile.object_specs) print_spec(out, spec);
    out << ')';
  }
  if (!profile.custom_objects.empty()) {
    out << "\n  (:custom";
    for (const auto& spec : profile.custom_objects) print_spec(out, spec);
    out << ')';
  }
  for (const auto& rule : profile.rules) {
    out << "\n  (:predicate " << rule.predicate << "\n    :parameters (";
    for (std::size_t i = 0; i < rule.params.size(); ++i) {
      out << (i ? " " : "") << rule.params[i];
    }
    out << ")\n    :effects";
    for (const auto& eff : rule.effects) {
      out << "\n      ";
      if (eff.kind == Effect::Kind::Equal) {
        out << "(equal " << ref_text(eff.target) << ' ' << expr_text(eff.expr) << ')';
        continue;
      }
      out << "(assign " << ref_text(eff.target) << " (function " << function_name(eff.call.function)
          << " (objects";
      for (const auto& o : eff.call.objects) out << ' ' << o;
      out << ')';
      if (!eff.call.settings.empty()) {
        out << " (settings";
        for (const auto& [key, value] : eff.call.settings) {
          out << " (" << key << ' ' << setting_text(value) << ')';
        }
        out << ')';
      }
      out << "))";
    }
    out << ')';
  }
  out << ")\n";
  return out.str();
}

}  // namespace planim::profile
