#include <stdexcept>

#include "doctest.h"
#include "stonework/piecewise.hpp"

using namespace stonework;

namespace {
std::shared_ptr<const FeasibleSpace> sp() { return make_space("builtin-cantor"); }
}

TEST_CASE("identity map covers everything with the trivial move") {
  auto s = sp();
  PiecewiseMap id = identity_map(s);
  CHECK(id.apply(FinSet::of({2, 5}), 16) == FinSet::of({2, 5}));
  CHECK(id.exhausted());
  CHECK(id.forced_pieces().size() == 1);
}

TEST_CASE("increment map steps through the enumeration") {
  auto s = sp();
  PiecewiseMap inc = odometer_map(s);
  CHECK(inc.apply(FinSet(), 64) == FinSet::of({1}));
  CHECK(inc.apply(FinSet::of({1, 2, 3}), 64) == FinSet::of({4}));
  for (uint64_t i = 0; i < 64; ++i)
    CHECK(inc.apply(enum_finset(i), 64) == enum_finset(i + 1));

  SUBCASE("scan cap cuts the piece walk short") {
    PiecewiseMap fresh = odometer_map(s);
    CHECK_THROWS_AS(fresh.apply(FinSet::of({1, 2, 3}), 2), ScanCapError);
  }
}

TEST_CASE("swap induction exchanges the two half-spaces") {
  auto s = sp();
  ClopenPtr A = ClopenExpr::en(1);
  ClopenPtr B = ClopenExpr::complement(A);
  PiecewiseMap h = build_swap(s, A, B, FinSet::of({1}), FinSet(), 8);

  CHECK(h.apply(FinSet::of({1}), 256) == FinSet());
  CHECK(h.apply(FinSet(), 256) == FinSet::of({1}));

  SUBCASE("involution moving A onto B, pointwise over the window") {
    for (uint64_t m = 0; m < 32; ++m) {
      FinSet x = enum_finset(m);
      FinSet y = h.apply(x, 256);
      CHECK(h.apply(y, 256) == x);
      CHECK(member(*s, x, A) == member(*s, y, B));
    }
  }
}

TEST_CASE("swap leaves points off the union fixed") {
  auto s = sp();
  ClopenPtr A = ClopenExpr::intersect(ClopenExpr::en(1), ClopenExpr::en(2));
  ClopenPtr B = ClopenExpr::intersect(ClopenExpr::complement(ClopenExpr::en(1)),
                                      ClopenExpr::complement(ClopenExpr::en(2)));
  PiecewiseMap h = build_swap(s, A, B, FinSet::of({1, 2}), FinSet(), 8);
  CHECK(h.apply(FinSet::of({1, 2}), 256) == FinSet());
  CHECK(h.apply(FinSet::of({2}), 256) == FinSet::of({2}));
  CHECK(h.apply(FinSet::of({1}), 256) == FinSet::of({1}));
}

TEST_CASE("restriction narrows the footprint") {
  auto s = sp();
  PiecewiseMap cut = restrict_map(identity_map(s), ClopenExpr::en(1));
  CHECK(cut.apply(FinSet::of({1}), 16) == FinSet::of({1}));
  CHECK_THROWS_AS(cut.apply(FinSet::of({2}), 16), std::runtime_error);
}

TEST_CASE("composition runs right then left") {
  auto s = sp();
  PiecewiseMap h = build_swap(s, ClopenExpr::en(1),
                              ClopenExpr::complement(ClopenExpr::en(1)),
                              FinSet::of({1}), FinSet(), 5);
  PiecewiseMap hh = compose(h, h);
  for (uint64_t m = 0; m < 32; ++m)
    CHECK(hh.apply(enum_finset(m), 4096) == enum_finset(m));

  SUBCASE("against sequential application") {
    PiecewiseMap inc = odometer_map(s);
    PiecewiseMap mixed = compose(h, inc, 5);
    for (uint64_t m = 0; m < 16; ++m) {
      FinSet x = enum_finset(m);
      CHECK(mixed.apply(x, 4096) == h.apply(inc.apply(x, 4096), 4096));
    }
  }

  SUBCASE("window pruning keeps the composite exact on the window") {
    PiecewiseMap pruned = compose(h, h, 5);
    for (uint64_t m = 0; m < 32; ++m)
      CHECK(pruned.apply(enum_finset(m), 4096) == enum_finset(m));
  }
}

TEST_CASE("overlay concatenates disjoint domains") {
  auto s = sp();
  PiecewiseMap left = restrict_map(identity_map(s), ClopenExpr::en(1));
  PiecewiseMap right =
      restrict_map(identity_map(s), ClopenExpr::complement(ClopenExpr::en(1)));
  PiecewiseMap both = overlay(s, {left, right});
  for (uint64_t m = 0; m < 16; ++m)
    CHECK(both.apply(enum_finset(m), 64) == enum_finset(m));
}

TEST_CASE("swap construction reports sides that run dry") {
  auto s = sp();
  // the second set is visibly smaller at this depth, so its witnesses run
  // out while the first side still has some
  ClopenPtr A = ClopenExpr::en(1);
  ClopenPtr B = ClopenExpr::intersect(ClopenExpr::complement(ClopenExpr::en(1)),
                                      ClopenExpr::complement(ClopenExpr::en(2)));
  PiecewiseMap h = build_swap(s, A, B, FinSet::of({1}), FinSet(), 3);
  CHECK_THROWS_WITH_AS(
      [&] {
        for (uint64_t m = 0; m < 16; ++m) h.apply(enum_finset(m), 4096);
      }(),
      doctest::Contains("exhausted unevenly"), std::runtime_error);

  SUBCASE("overlap and membership preconditions") {
    CHECK_THROWS_AS(build_swap(s, A, A, FinSet::of({1}), FinSet::of({1}), 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_swap(s, A, B, FinSet(), FinSet(), 3),
                    std::invalid_argument);
  }
}
