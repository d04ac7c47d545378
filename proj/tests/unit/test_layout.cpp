#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "planim/layout.hpp"
#include "planim/plan.hpp"
#include "resolve_scan.hpp"
#include "test_util.hpp"

using namespace planim;
using namespace planim::layout;
using planim::profile::Property;
using planim::testing::contains;
using planim::testing::error_of;

namespace {

VisualObject box(std::optional<std::int64_t> x, std::optional<std::int64_t> y, std::int64_t w,
                 std::int64_t h) {
  VisualObject o;
  o.x = x;
  o.y = y;
  o.width = w;
  o.height = h;
  return o;
}

std::int64_t write_of(const LayoutResult& r, const std::string& obj, Property p) {
  for (const auto& w : r.writes) {
    if (w.object == obj && w.property == p) return std::get<std::int64_t>(w.value);
  }
  FAIL("no write for " << obj);
  return 0;
}

pddl::AtomSet atoms(std::initializer_list<pddl::GroundAtom> list) { return {list}; }

}  // namespace

TEST_CASE("distributex from zero with exact gaps") {
  ObjectTable t{{"a", box({}, {}, 40, 40)}, {"b", box({}, {}, 40, 40)}, {"c", box({}, {}, 40, 40)}};
  std::vector<std::string> g{"a", "b", "c"};
  auto r = distribute_x(g, 40, t);
  CHECK(write_of(r, "a", Property::X) == 0);
  CHECK(write_of(r, "b", Property::X) == 80);
  CHECK(write_of(r, "c", Property::X) == 160);
  t["b"].height = 10;
  auto ry = distribute_y(g, 5, t);
  CHECK(write_of(ry, "c", Property::Y) == 40 + 5 + 10 + 5);
}

TEST_CASE("distribute within a container") {
  ObjectTable t{{"city", box(100, 0, 300, 160)}, {"l", box({}, {}, 100, 120)},
                {"a", box({}, {}, 100, 120)}};
  std::vector<std::string> g{"a", "l"};
  auto r = distribute_within(g, "city", Axis::Horizontal, t);
  // slots of 150: centres at 175 and 325
  CHECK(write_of(r, "a", Property::X) == 125);
  CHECK(write_of(r, "l", Property::X) == 275);
  CHECK(write_of(r, "a", Property::Y) == 20);
  auto v = distribute_within(g, "city", Axis::Vertical, t);
  CHECK(write_of(v, "a", Property::X) == 200);
  CHECK(write_of(v, "a", Property::Y) == -20);  // centred in the lower half
  t["city"].x.reset();
  auto pending = distribute_within(g, "city", Axis::Horizontal, t);
  CHECK(pending.writes.empty());
  CHECK(pending.pending == std::vector<std::string>{"city"});
}

TEST_CASE("grid rows from the top, centred on the point") {
  ObjectTable t;
  std::vector<std::string> g;
  for (int i = 0; i < 6; ++i) {
    g.push_back("n" + std::to_string(i));
    t[g.back()] = box({}, {}, 60, 60);
  }
  GridSettings s{200, 200, 30, 3};
  auto r = distribute_grid_around_point(g, s, t);
  // pitch 90; columns centred at 110, 200, 290; rows at 245 and 155
  CHECK(write_of(r, "n0", Property::X) == 80);
  CHECK(write_of(r, "n1", Property::X) == 170);
  CHECK(write_of(r, "n2", Property::X) == 260);
  CHECK(write_of(r, "n0", Property::Y) == 215);
  CHECK(write_of(r, "n3", Property::Y) == 125);
  GridSettings auto_cols{0, 0, 0, std::nullopt};
  auto sq = distribute_grid_around_point(std::vector<std::string>{"n0", "n1", "n2", "n3", "n4"},
                                         auto_cols, t);
  CHECK(write_of(sq, "n3", Property::X) < write_of(sq, "n4", Property::X));  // 3 columns
  CHECK(write_of(sq, "n3", Property::Y) < write_of(sq, "n0", Property::Y));
}

TEST_CASE("align_middle, apply_smaller, draw_line, calculate_label") {
  ObjectTable t{{"truck", box(10, 20, 40, 20)}, {"pkg", box({}, {}, 16, 16)}};
  auto a = align_middle("pkg", "truck", t);
  CHECK(write_of(a, "pkg", Property::X) == 22);
  CHECK(write_of(a, "pkg", Property::Y) == 22);

  auto s = apply_smaller("pkg", Rational{1, 2}, t);
  CHECK(write_of(s, "pkg", Property::Width) == 8);
  CHECK(write_of(s, "pkg", Property::Height) == 8);
  auto d = apply_smaller("pkg", kDefaultSmallerScale, t);
  CHECK(write_of(d, "pkg", Property::Width) == 13);  // 12.8 rounds up
  CHECK(contains(error_of([&] { apply_smaller("pkg", Rational{3, 2}, t); }), "scale out of range"));

  ObjectTable u{{"p", box(0, 0, 10, 10)}, {"q", box(100, 50, 20, 20)}};
  auto l = draw_line("p", "q", kDefaultLineColor, u);
  REQUIRE(l.lines.size() == 1);
  CHECK(l.lines[0] == LineElement{"p", "q", Rgb{0, 0, 0}, 5, 5, 110, 60});
  u["q"].y.reset();
  CHECK(draw_line("p", "q", kDefaultLineColor, u).pending == std::vector<std::string>{"q"});

  std::map<std::string, std::vector<std::string>> groups{{"t1", {"p1", "p2"}}, {"t2", {"p3"}}};
  auto c = calculate_label(groups);
  REQUIRE(c.writes.size() == 2);
  CHECK(c.writes[0] == PropertyWrite{"t1", Property::Label, std::string("2")});
  CHECK(c.writes[1] == PropertyWrite{"t2", Property::Label, std::string("1")});
}

TEST_CASE("unknown objects are reported") {
  ObjectTable t;
  CHECK(contains(error_of([&] { align_middle("a", "b", t); }), "unknown object 'b'"));
}

TEST_CASE("per-vehicle grouping for calculate_label") {
  profile::PredicateRule rule{"in", {"?p", "?v"}, {}};
  profile::FunctionCall call;
  call.function = profile::LayoutFunction::CalculateLabel;
  call.objects = {"?p"};
  profile::PropertyRef target{"?v", Property::Label};
  auto state = atoms({{"in", {"p1", "t1"}}, {"in", {"p2", "t1"}}, {"in", {"p3", "t2"}},
                      {"at", {"t1", "l1"}}});
  auto inv = resolve_objects(call, target, rule, state);
  CHECK(inv.groups == std::map<std::string, std::vector<std::string>>{{"t1", {"p1", "p2"}},
                                                                      {"t2", {"p3"}}});
}

TEST_CASE("shared and container grouping") {
  profile::PredicateRule ontable{"ontable", {"?b"}, {}};
  profile::FunctionCall dx;
  dx.function = profile::LayoutFunction::DistributeX;
  dx.objects = {"?b"};
  auto inv = resolve_objects(dx, {"?b", Property::X}, ontable,
                             atoms({{"ontable", {"c"}}, {"ontable", {"a"}}, {"on", {"b", "a"}}}));
  CHECK(inv.groups == std::map<std::string, std::vector<std::string>>{{"", {"a", "c"}}});

  profile::PredicateRule at{"at", {"?o", "?l"}, {}};
  profile::FunctionCall within;
  within.function = profile::LayoutFunction::DistributeWithinVertical;
  within.objects = {"?o", "?l"};
  auto inv2 = resolve_objects(within, {"?o", Property::X}, at,
                              atoms({{"at", {"t1", "l1"}}, {"at", {"p1", "l1"}}, {"at", {"p2", "l2"}}}));
  CHECK(inv2.groups == std::map<std::string, std::vector<std::string>>{{"l1", {"p1", "t1"}},
                                                                       {"l2", {"p2"}}});
}

TEST_CASE("resolve_objects matches the brute-force scan on all fixture states") {
  for (const auto& name : planim::testing::kFixtureNames) {
    CAPTURE(name);
    auto f = planim::testing::load_fixture(name);
    auto t = plan::execute_plan(f.domain, f.problem, f.plan);
    for (const auto& state : t.states) {
      for (const auto& rule : f.profile.rules) {
        for (const auto& eff : rule.effects) {
          if (eff.kind != profile::Effect::Kind::Assign) continue;
          auto inv = resolve_objects(eff.call, eff.target, rule, state);
          auto scan = oracle::scan_objects(eff.call, eff.target, rule, state);
          REQUIRE(inv.groups.size() == scan.groups.size());
          for (const auto& [key, members] : inv.groups) {
            REQUIRE(scan.groups.count(key));
            CHECK(std::set<std::string>(members.begin(), members.end()) == scan.groups.at(key));
            CHECK(std::is_sorted(members.begin(), members.end()));
          }
          CHECK(std::set<std::vector<std::string>>(inv.bindings.begin(), inv.bindings.end()) ==
                scan.bindings);
        }
      }
    }
  }
}

TEST_CASE("random groups: spacing, centroid and containment") {
  std::mt19937_64 rng(7);
  auto rnd = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rnd(1, 9);
    ObjectTable t;
    std::vector<std::string> g;
    for (int i = 0; i < n; ++i) {
      g.push_back("o" + std::to_string(i));
      t[g.back()] = box({}, {}, rnd(1, 50), rnd(1, 50));
    }
    const int s = rnd(0, 30);
    auto r = distribute_x(g, s, t);
    for (int i = 0; i + 1 < n; ++i) {
      CHECK(write_of(r, g[i + 1], Property::X) -
                (write_of(r, g[i], Property::X) + t[g[i]].width) ==
            s);
    }
    GridSettings gs{rnd(-100, 100), rnd(-100, 100), s, std::nullopt};
    auto grid = distribute_grid_around_point(g, gs, t);
    double cx = 0, cy = 0;
    for (const auto& o : g) {
      cx += write_of(grid, o, Property::X) + t[o].width / 2.0;
      cy += write_of(grid, o, Property::Y) + t[o].height / 2.0;
    }
    CHECK(std::abs(cx / n - gs.x) <= 1.0);
    CHECK(std::abs(cy / n - gs.y) <= 1.0);
  }
}
