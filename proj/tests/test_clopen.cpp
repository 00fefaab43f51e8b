#include <stdexcept>

#include "doctest.h"
#include "stonework/clopen.hpp"

using namespace stonework;

namespace {
std::shared_ptr<const FeasibleSpace> sp() { return make_space("builtin-cantor"); }
}

TEST_CASE("constructors absorb the trivial sets") {
  CHECK(ClopenExpr::basis(FinSet(), {})->kind() == ClopenExpr::Kind::Full);
  CHECK(ClopenExpr::complement(ClopenExpr::full())->kind() == ClopenExpr::Kind::Empty);
  CHECK(ClopenExpr::intersect(ClopenExpr::en(1), ClopenExpr::empty())->kind() ==
        ClopenExpr::Kind::Empty);
  CHECK(ClopenExpr::unite(ClopenExpr::en(1), ClopenExpr::full())->kind() ==
        ClopenExpr::Kind::Full);
  CHECK(serialize(ClopenExpr::en(2)) == "(E (2) ())");
  CHECK(serialize(ClopenExpr::difference(ClopenExpr::en(1), ClopenExpr::en(2))) ==
        "(and (E (1) ()) (not (E (2) ())))");
}

TEST_CASE("membership follows the point query") {
  auto s = sp();
  ClopenPtr e1 = ClopenExpr::en(1);
  CHECK(member(*s, FinSet::of({1}), e1) == 1);
  CHECK(member(*s, FinSet::of({2}), e1) == 0);
  CHECK(member(*s, FinSet(), ClopenExpr::complement(e1)) == 1);

  ClopenPtr guarded = ClopenExpr::basis(FinSet(), {TPoint::alternating()});
  CHECK(member(*s, FinSet(), guarded) == 1);
  CHECK(member(*s, FinSet::of({2}), guarded) == 0);  // index 2 is seen
  CHECK(member(*s, FinSet::of({3}), guarded) == 1);

  // repeated queries hit the memo and stay consistent
  for (int pass = 0; pass < 3; ++pass)
    for (uint64_t m = 0; m < 64; ++m)
      CHECK(member(*s, enum_finset(m), guarded) ==
            member(*s, enum_finset(m), guarded));
}

TEST_CASE("coordinate toggle images, branch by branch") {
  auto s = sp();

  SUBCASE("toggled index present: complement against the half-space") {
    SigmaStats st;
    ClopenPtr img = sigma_image(*s, 1, ClopenExpr::en(1), &st);
    CHECK(st.removed == 1);
    CHECK(serialize(img) == "(not (E (1) ()))");
  }

  SUBCASE("toggled index absent and unseen: both halves swap") {
    SigmaStats st;
    ClopenPtr img = sigma_image(*s, 2, ClopenExpr::en(1), &st);
    CHECK(st.plain_add == 1);
    CHECK(serialize(img) ==
          "(or (E (1 2) ()) (and (E (1) ()) (not (E (2) ()))))");
  }

  SUBCASE("toggled index seen by a query point: image only gains it") {
    SigmaStats st;
    ClopenPtr base = ClopenExpr::basis(FinSet(), {TPoint::alternating()});
    ClopenPtr img = sigma_image(*s, 5, base, &st);
    CHECK(st.guarded_add == 1);
    CHECK(serialize(img) == "(E (5) (:01))");
  }

  SUBCASE("pointwise agreement with the toggle action") {
    ClopenPtr e = ClopenExpr::unite(
        ClopenExpr::intersect(ClopenExpr::en(1), ClopenExpr::en(3)),
        ClopenExpr::basis(FinSet::of({2}), {TPoint::alternating()}));
    for (int n = 1; n <= 6; ++n) {
      ClopenPtr img = sigma_image(*s, n, e);
      DyadicElem g(FinSet::of({n}));
      for (uint64_t m = 0; m < 64; ++m) {
        FinSet k = enum_finset(m);
        CHECK(member(*s, k, img) == member(*s, dyadic_act(g, k), e));
      }
      CHECK(equal_on_window(*s, sigma_image(*s, n, img), e, 6));
    }
  }
}

TEST_CASE("group images fold the toggles") {
  auto s = sp();
  ClopenPtr e = ClopenExpr::en(2);
  DyadicElem g(FinSet::of({1, 3}));
  ClopenPtr img = epsilon_image(*s, g, e);
  for (uint64_t m = 0; m < 32; ++m) {
    FinSet k = enum_finset(m);
    CHECK(member(*s, k, img) == member(*s, dyadic_act(g, k), e));
  }
}

TEST_CASE("witness search walks the enumeration") {
  auto s = sp();
  CHECK(find_witness(*s, ClopenExpr::en(2), 3) == FinSet::of({2}));
  CHECK(find_witness(*s, ClopenExpr::full(), 3) == FinSet());
  CHECK(!find_witness(*s, ClopenExpr::empty(), 3).has_value());
  CHECK(!find_witness(
             *s, ClopenExpr::intersect(ClopenExpr::en(1), ClopenExpr::complement(ClopenExpr::en(1))),
             5)
             .has_value());
  CHECK_THROWS_AS(find_witness(*s, ClopenExpr::full(), 31), std::domain_error);
}

TEST_CASE("splitting picks the least usable index and keeps the anchor") {
  auto s = sp();
  ClopenPtr half = split(*s, ClopenExpr::full(), FinSet(), FinSet(), 3);
  CHECK(serialize(half) == "(not (E (1) ()))");
  CHECK(member(*s, FinSet(), half) == 1);

  ClopenPtr other = split(*s, ClopenExpr::full(), FinSet::of({1}), FinSet(), 3);
  CHECK(member(*s, FinSet::of({1}), other) == 1);
  CHECK(member(*s, FinSet(), other) == 0);

  // with index 1 used up, the split moves to index 2
  ClopenPtr second = split(*s, ClopenExpr::full(), FinSet(), FinSet::of({1}), 3);
  CHECK(member(*s, FinSet::of({2}), second) == 0);

  CHECK_THROWS_AS(split(*s, ClopenExpr::en(1), FinSet::of({1}), FinSet::of({1, 2, 3}), 3),
                  std::runtime_error);
}

TEST_CASE("transport nodes answer through the involution") {
  auto s = sp();
  auto toggle2 = [](const FinSet& k) {
    return k.contains(2) ? k.without(2) : k.with(2);
  };
  ClopenPtr moved = ClopenExpr::transported(toggle2, "t2", ClopenExpr::en(2));
  CHECK(member(*s, FinSet(), moved) == 1);       // toggles into (2)
  CHECK(member(*s, FinSet::of({2}), moved) == 0);
  CHECK(serialize(moved) == "(img t2 (E (2) ()))");
}

TEST_CASE("invariance audit classifies window-invariant sets") {
  auto s = sp();
  std::vector<DyadicElem> all{DyadicElem(FinSet::of({1})), DyadicElem(FinSet::of({2})),
                              DyadicElem(FinSet::of({3}))};
  CHECK(invariant_clopen_audit(*s, all, ClopenExpr::empty(), 3) ==
        InvariantVerdict::TrivialEmpty);
  CHECK(invariant_clopen_audit(*s, all, ClopenExpr::full(), 3) ==
        InvariantVerdict::TrivialFull);
  CHECK(invariant_clopen_audit(*s, all, ClopenExpr::en(1), 3) ==
        InvariantVerdict::NotInvariant);
  // dropping the first toggle leaves the first half-space invariant
  std::vector<DyadicElem> partial{DyadicElem(FinSet::of({2})), DyadicElem(FinSet::of({3}))};
  CHECK(invariant_clopen_audit(*s, partial, ClopenExpr::en(1), 3) ==
        InvariantVerdict::InvariantNontrivial);
}
