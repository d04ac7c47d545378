#include <doctest.h>

#include "planim/sexpr.hpp"
#include "test_util.hpp"

using namespace planim;
using planim::testing::contains;
using planim::testing::error_of;

TEST_CASE("symbols are lowercased, strings keep case") {
  auto all = read_sexprs("(Define \"Mixed Case\" ?X) foo");
  REQUIRE(all.size() == 2);
  REQUIRE(all[0].is_list());
  CHECK(all[0].items[0].is_symbol("define"));
  CHECK(all[0].items[1].is_string());
  CHECK(all[0].items[1].text == "Mixed Case");
  CHECK(all[0].items[2].text == "?x");
  CHECK(all[1].is_symbol("foo"));
}

TEST_CASE("comments run to end of line") {
  auto e = read_single_sexpr("; header\n(a ; inner ) comment\n b)");
  REQUIRE(e.items.size() == 2);
  CHECK(e.items[1].is_symbol("b"));
}

TEST_CASE("string escapes") {
  auto e = read_single_sexpr(R"(("a\"b\\c"))");
  CHECK(e.items[0].text == "a\"b\\c");
}

TEST_CASE("locations are 1-based line and column") {
  auto e = read_single_sexpr("(a\n  (b c))");
  CHECK(e.loc.line == 1);
  CHECK(e.loc.column == 1);
  CHECK(e.items[1].loc.line == 2);
  CHECK(e.items[1].loc.column == 3);
}

TEST_CASE("malformed input is reported with a position") {
  CHECK(contains(error_of([] { read_single_sexpr("(a (b)"); }), "unterminated list"));
  CHECK(contains(error_of([] { read_single_sexpr("a)"); }), "1:2: unexpected ')'"));
  CHECK(contains(error_of([] { read_sexprs(")"); }), "1:1: unexpected ')'"));
  CHECK(contains(error_of([] { read_single_sexpr("(\"abc"); }), "unterminated string"));
  CHECK(contains(error_of([] { read_single_sexpr("  ; nothing\n"); }), "empty input"));
  CHECK(contains(error_of([] { read_single_sexpr("(a) (b)"); }), "unexpected trailing"));
}

TEST_CASE("is_form matches the head symbol only") {
  auto e = read_single_sexpr("(and (x) y)");
  CHECK(e.is_form("and"));
  CHECK_FALSE(e.items[1].is_form("and"));
  CHECK_FALSE(e.items[2].is_form("y"));
}
