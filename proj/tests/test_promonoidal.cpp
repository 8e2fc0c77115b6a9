#include "support.hpp"

using namespace mktest;

TEST_CASE("coend pairing and multimap products, exhaustively") {
  for (const auto& name : {"trivial", "C2"}) {
    GroupPtr g = group(name);
    CAPTURE(name);
    PromonoidalSweep s = promonoidal_sweep(g, 2);
    CHECK(s.coend_cases > 0);
    CHECK(s.product_cases > 0);
    CHECK(s.failures.empty());
  }
}

TEST_CASE("single cases") {
  GroupPtr g = group("C2");
  GSet free = GSet::orbit(g, 0), pt = GSet::point(g);
  // two feet in one block: A(X x Y, Z) recovered from the pairing
  CoendCheck c = promonoidal_check(g, {free, pt}, {0, 0}, 1, free);
  CHECK(c.ok());
  CHECK(c.target_rank == hom_basis(product_set(free, pt), free).size());
  CHECK(isomorphic(c.quotient, AbGroup::free(c.target_rank)));
  // an empty block contributes the unit
  CoendCheck e = promonoidal_check(g, {pt}, {1}, 2, pt);
  CHECK(e.ok());
  MultimapProductCheck m = multimap_product_check(g, {{free}, {pt}}, {free, pt});
  CHECK(m.ok());
  CHECK(m.lhs == m.rhs);
}
