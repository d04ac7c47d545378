#include "planim/sexpr.hpp"

#include <cctype>

namespace planim {

namespace {

std::string format_location(const std::string& message, Location loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message;
}

class Reader {
 public:
  explicit Reader(std::string_view src) : src_(src) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_space();
    while (pos_ < src_.size()) {
      out.push_back(read_one());
      skip_space();
    }
    return out;
  }

 private:
  Location here() const { return {line_, col_}; }

  char peek() const { return src_[pos_]; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (c == ';') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read_one() {
    Location start = here();
    char c = peek();
    if (c == ')') throw ParseError("unexpected ')'", start);
    if (c == '(') {
      advance();
      SExpr list;
      list.kind = SExpr::Kind::List;
      list.loc = start;
      for (;;) {
        skip_space();
        if (pos_ >= src_.size()) throw ParseError("unterminated list", start);
        if (peek() == ')') {
          advance();
          return list;
        }
        list.items.push_back(read_one());
      }
    }
    if (c == '"') {
      advance();
      SExpr str;
      str.kind = SExpr::Kind::String;
      str.loc = start;
      for (;;) {
        if (pos_ >= src_.size()) throw ParseError("unterminated string", start);
        char d = peek();
        advance();
        if (d == '"') return str;
        if (d == '\\') {
          if (pos_ >= src_.size()) throw ParseError("unterminated string", start);
          d = peek();
          advance();
          if (d == 'n') d = '\n';
        }
        str.text.push_back(d);
      }
    }
    SExpr sym;
    sym.kind = SExpr::Kind::Symbol;
    sym.loc = start;
    while (pos_ < src_.size()) {
      char d = peek();
      if (d == '(' || d == ')' || d == ';' || d == '"' ||
          std::isspace(static_cast<unsigned char>(d))) {
        break;
      }
      sym.text.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(d))));
      advance();
    }
    return sym;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

ParseError::ParseError(const std::string& message, Location loc)
    : std::runtime_error(format_location(message, loc)), loc_(loc), has_location_(true) {}

ParseError::ParseError(const std::string& message) : std::runtime_error(message) {}

bool SExpr::is_form(std::string_view head) const {
  return kind == Kind::List && !items.empty() && items.front().is_symbol(head);
}

std::vector<SExpr> read_sexprs(std::string_view source) { return Reader(source).read_all(); }

SExpr read_single_sexpr(std::string_view source) {
  auto all = read_sexprs(source);
  if (all.empty()) throw ParseError("empty input", Location{});
  if (all.size() > 1) throw ParseError("unexpected trailing expression", all[1].loc);
  return std::move(all.front());
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace planim
