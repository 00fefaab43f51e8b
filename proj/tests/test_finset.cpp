#include "doctest.h"
#include "stonework/finset.hpp"

using namespace stonework;

TEST_CASE("finite sets sort and deduplicate") {
  FinSet a(std::vector<int>{3, 1, 2, 3, 1});
  CHECK(a.str() == "(1 2 3)");
  CHECK(a.size() == 3);
  CHECK(a.contains(2));
  CHECK(!a.contains(4));
  CHECK(a.max() == 3);
  CHECK(FinSet().max() == 0);
  CHECK(FinSet().empty());
}

TEST_CASE("with and without keep order") {
  FinSet a = FinSet::of({1, 3});
  CHECK(a.with(2).str() == "(1 2 3)");
  CHECK(a.with(3) == a);
  CHECK(a.without(3).str() == "(1)");
  CHECK(a.without(2) == a);
}

TEST_CASE("symmetric difference") {
  CHECK(symdiff(FinSet::of({1, 2}), FinSet::of({2, 3})) == FinSet::of({1, 3}));
  CHECK(symdiff(FinSet(), FinSet::of({5})) == FinSet::of({5}));
  CHECK(symdiff(FinSet::of({4}), FinSet::of({4})).empty());
}

TEST_CASE("enumeration maps binary digits to elements") {
  CHECK(enum_finset(0).empty());
  CHECK(enum_finset(1) == FinSet::of({1}));
  CHECK(enum_finset(5) == FinSet::of({1, 3}));
  CHECK(enum_finset(6) == FinSet::of({2, 3}));

  SUBCASE("round trip on a full block") {
    for (uint64_t i = 0; i < (1u << 12); ++i) {
      FinSet k = enum_finset(i);
      CHECK(finset_index(k) == i);
      CHECK(k.mask() == i);
      CHECK(FinSet::from_mask(i) == k);
    }
  }
}

TEST_CASE("subset test") {
  CHECK(FinSet::of({1, 3}).subset_of(FinSet::of({1, 2, 3})));
  CHECK(!FinSet::of({1, 4}).subset_of(FinSet::of({1, 2, 3})));
  CHECK(FinSet().subset_of(FinSet()));
}

TEST_CASE("group elements act by toggling their support") {
  DyadicElem g(FinSet::of({1, 2}));
  DyadicElem h(FinSet::of({2, 3}));
  CHECK((g * h).support() == FinSet::of({1, 3}));
  CHECK((g * g).is_identity());
  CHECK(dyadic_act(g, FinSet::of({2})) == FinSet::of({1}));

  // involutive, commuting, free on every point of a window
  for (uint64_t gm = 0; gm < 32; ++gm) {
    DyadicElem a(enum_finset(gm));
    for (uint64_t x = 0; x < 32; ++x) {
      FinSet k = enum_finset(x);
      CHECK(dyadic_act(a, dyadic_act(a, k)) == k);
      if (gm != 0) CHECK(dyadic_act(a, k) != k);
    }
  }
}
