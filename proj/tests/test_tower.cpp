#include "doctest.h"
#include "stonework/audit.hpp"
#include "stonework/tower.hpp"

using namespace stonework;

namespace {
std::shared_ptr<const FeasibleSpace> sp() { return make_space("builtin-cantor"); }

bool all_pass(const std::vector<Check>& cs) {
  for (const Check& c : cs)
    if (c.status == "fail") return false;
  return true;
}
}

TEST_CASE("default neighbourhood chain cuts the least coordinate per step") {
  auto nb = default_neighborhoods(3);
  REQUIRE(nb.size() == 3);
  CHECK(serialize(nb[0]) == "(not (E (1) ()))");
  CHECK(serialize(nb[1]) == "(and (not (E (1) ())) (not (E (2) ())))");
  // the third enumerated set is {1,2}; its least element 1 is already cut
  CHECK(serialize(nb[2]) == serialize(nb[1]));

  auto s = sp();
  for (int p = 1; p <= 3; ++p) {
    CHECK(member(*s, FinSet(), nb[p - 1]) == 1);
    CHECK(member(*s, enum_finset(p), nb[p - 1]) == 0);
  }
}

TEST_CASE("tower levels act as coordinate toggles on the window") {
  auto s = sp();
  InvolutionTower t = build_tower(s, 4, default_neighborhoods(4), 7);
  CHECK(t.n() == 4);
  for (int j = 1; j <= 4; ++j) {
    DyadicElem gj(FinSet::of({j}));
    for (uint64_t m = 0; m < 16; ++m) {
      FinSet x = enum_finset(m);
      CHECK(t.map(j).apply(x, t.scan_cap()) == dyadic_act(gj, x));
    }
  }

  SUBCASE("level one exchanges the neighbourhood with its complement") {
    CHECK(t.transport(1, 1, FinSet()) == FinSet::of({1}));
    CHECK(member(*s, FinSet(), t.node(1, 0)) == 1);
    CHECK(member(*s, FinSet::of({1}), t.node(1, 1)) == 1);
  }

  SUBCASE("group action through the tower") {
    for (uint64_t gm = 0; gm < 16; ++gm) {
      DyadicElem g(enum_finset(gm));
      for (uint64_t m = 0; m < 16; ++m)
        CHECK(dyadic_action(t, g, enum_finset(m)) ==
              dyadic_act(g, enum_finset(m)));
    }
  }
}

TEST_CASE("tower audits pass at height three") {
  InvolutionTower t = build_tower(sp(), 3, default_neighborhoods(3), 6);
  CHECK(all_pass(audit_tower(t)));
}

TEST_CASE("reparametrized action walks the enumeration") {
  ZActionMap z = build_zaction(build_tower(sp(), 4, default_neighborhoods(4), 7));
  FinSet x;
  for (uint64_t i = 1; i < 16; ++i) {
    REQUIRE(z.forward_defined(x));
    x = z.forward(x);
    CHECK(x == enum_finset(i));
    CHECK(z.backward(x) == enum_finset(i - 1));
  }
  // top of the stage: all-ones has no successor inside the construction
  CHECK(!z.forward_defined(FinSet::of({1, 2, 3, 4})));
  CHECK(!z.backward_defined(FinSet()));
  CHECK(all_pass(audit_zaction(z)));
}

TEST_CASE("tower construction validates its neighbourhood chain") {
  auto s = sp();
  // increasing chain: D2 fails to stay inside D1
  std::vector<ClopenPtr> badchain{
      ClopenExpr::intersect(ClopenExpr::complement(ClopenExpr::en(1)),
                            ClopenExpr::complement(ClopenExpr::en(2))),
      ClopenExpr::complement(ClopenExpr::en(2))};
  CHECK_THROWS_AS(build_tower(s, 2, badchain, 6), std::invalid_argument);
  // chain that fails to exclude the enumerated point
  std::vector<ClopenPtr> lax{ClopenExpr::full()};
  CHECK_THROWS_AS(build_tower(s, 1, lax, 6), std::invalid_argument);
}
