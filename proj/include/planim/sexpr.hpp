#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace planim {

struct Location {
  int line = 1;
  int column = 1;
};

/// Error raised by any of the text front ends. The message is prefixed with
/// `line:column:` when a location is known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, Location loc);
  explicit ParseError(const std::string& message);

  const Location& location() const { return loc_; }
  bool has_location() const { return has_location_; }

 private:
  Location loc_;
  bool has_location_ = false;
};

struct SExpr {
  enum class Kind { Symbol, String, List };

  Kind kind = Kind::Symbol;
  std::string text;  // symbol or string payload
  std::vector<SExpr> items;
  Location loc;

  bool is_symbol() const { return kind == Kind::Symbol; }
  bool is_symbol(std::string_view s) const { return kind == Kind::Symbol && text == s; }
  bool is_list() const { return kind == Kind::List; }
  bool is_string() const { return kind == Kind::String; }
  /// True for a list whose first item is the symbol `head`.
  bool is_form(std::string_view head) const;
};

/// Reads every top-level s-expression in `source`. `;` starts a comment that
/// runs to the end of the line. Symbols are lowercased; string literals
/// ("...", with \" and \\ escapes) keep their case.
std::vector<SExpr> read_sexprs(std::string_view source);

/// Reads exactly one top-level expression.
SExpr read_single_sexpr(std::string_view source);

std::string to_lower(std::string_view s);

}  // namespace planim
