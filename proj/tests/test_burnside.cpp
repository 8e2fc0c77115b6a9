#include <set>

#include "oracles.hpp"

using namespace mktest;

namespace {

// |Y| x |X| matrix counting H-fixed points of the middle over each (x, y).
// Fixed points of a pullback are the pullback of fixed points, so this is a
// functor to integer matrices.
Matrix fixed_point_matrix(const BurnsideElement& e, Subset h) {
  const GSet& x = e.source();
  const GSet& y = e.target();
  const FiniteGroup& g = *x.group();
  const int ny = static_cast<int>(y.size());
  Matrix m(y.size(), x.size());
  for (const auto& [code, coef] : e.terms()) {
    const Subset k = g.rep(code.cls);
    const int px = code.point / ny, py = code.point % ny;
    std::set<Subset> cosets;
    for (Element a = 0; a < static_cast<Element>(g.order()); ++a) {
      Subset coset = 0;
      for (Element b : members(k)) coset |= Subset{1} << g.mul(a, b);
      if (!cosets.insert(coset).second) continue;
      bool fixed = true;
      for (Element b : members(h))
        if (!contains(k, g.mul(g.inv(a), g.mul(b, a)))) fixed = false;
      if (fixed) m(static_cast<std::size_t>(y.act(a, py)), static_cast<std::size_t>(x.act(a, px))) += coef;
    }
  }
  return m;
}

// G-orbits of pairs (K, p) with p a K-fixed point of X x Y.
std::size_t brute_hom_rank(const GSet& x, const GSet& y) {
  const FiniteGroup& g = *x.group();
  ProductResult p = product(x, y);
  std::set<std::pair<Subset, int>> seen;
  std::size_t orbits = 0;
  for (Subset k : g.subgroups())
    for (int pt = 0; pt < static_cast<int>(p.set.size()); ++pt) {
      if (!p.set.is_fixed(pt, k) || seen.count({k, pt})) continue;
      ++orbits;
      for (Element a = 0; a < static_cast<Element>(g.order()); ++a) seen.insert({g.conjugate(k, a), p.set.act(a, pt)});
    }
  return orbits;
}

}  // namespace

TEST_CASE("hom bases have the rank of orbits of (subgroup, fixed point) pairs") {
  std::mt19937_64 rng(31);
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    for (int trial = 0; trial < 8; ++trial) {
      GSet x = random_shuffled_gset(g, rng, 2), y = random_shuffled_gset(g, rng, 2);
      auto basis = hom_basis(x, y);
      CHECK(basis.size() == brute_hom_rank(x, y));
      CHECK(std::is_sorted(basis.begin(), basis.end()));
    }
  }
}

TEST_CASE("composition matches fixed-point matrices") {
  std::mt19937_64 rng(32);
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    for (int trial = 0; trial < 12; ++trial) {
      GSet x = random_shuffled_gset(g, rng, 2), y = random_shuffled_gset(g, rng, 2), z = random_shuffled_gset(g, rng, 2);
      BurnsideElement s = random_element(x, y, rng), t = random_element(y, z, rng);
      BurnsideElement ts = compose(t, s);
      for (Subset h : g->subgroups()) {
        CHECK(fixed_point_matrix(ts, h) == fixed_point_matrix(t, h) * fixed_point_matrix(s, h));
        CHECK(fixed_point_matrix(BurnsideElement::identity(x), h).is_identity() == (fixed_points(x, h).size() == x.size()));
      }
      BurnsideElement v = random_element(y, z, rng);
      for (Subset h : g->subgroups())
        CHECK(fixed_point_matrix(tensor(s, v), h) == kronecker(fixed_point_matrix(s, h), fixed_point_matrix(v, h)));
    }
  }
}

TEST_CASE("category laws on random triples") {
  std::mt19937_64 rng(33);
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    for (int trial = 0; trial < 30; ++trial) {
      GSet w = random_gset(g, rng), x = random_gset(g, rng), y = random_gset(g, rng), z = random_gset(g, rng);
      auto a = random_element(w, x, rng), b = random_element(x, y, rng), c = random_element(y, z, rng);
      CHECK(compose(c, compose(b, a)) == compose(compose(c, b), a));
      CHECK(compose(BurnsideElement::identity(x), a) == a);
      CHECK(compose(a, BurnsideElement::identity(w)) == a);
      auto b2 = random_element(x, y, rng);
      CHECK(compose(b + b2, a) == compose(b, a) + compose(b2, a));
      CHECK(compose(c, b + b2) == compose(c, b) + compose(c, b2));
    }
  }
}

TEST_CASE("tensor interchange and direct sums") {
  std::mt19937_64 rng(34);
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    for (int trial = 0; trial < 6; ++trial) {
      GSet x = random_gset(g, rng, 1), y = random_gset(g, rng, 1), z = random_gset(g, rng, 1);
      GSet x2 = random_gset(g, rng, 1), y2 = random_gset(g, rng, 1), z2 = random_gset(g, rng, 1);
      auto s1 = random_element(x, y, rng, 2), s2 = random_element(y, z, rng, 2);
      auto t1 = random_element(x2, y2, rng, 2), t2 = random_element(y2, z2, rng, 2);
      CHECK(compose(tensor(s2, t2), tensor(s1, t1)) == tensor(compose(s2, s1), compose(t2, t1)));
      // split along a coproduct of sources and reassemble
      CoproductResult xs = coproduct(x, x2);
      auto e = random_element(xs.set, y, rng);
      auto [a, b] = direct_sum_decompose(e, x, x2);
      CHECK(direct_sum_assemble(a, b) == e);
      CoproductResult ys = coproduct(y, y2);
      auto f = random_element(x, ys.set, rng);
      auto [c, d] = direct_sum_decompose_target(f, y, y2);
      CHECK(direct_sum_assemble_target(c, d) == f);
    }
  }
}

TEST_CASE("duality") {
  std::mt19937_64 rng(35);
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    for (const auto& o : orbits(g)) CHECK(triangle_composite(o) == BurnsideElement::identity(o));
    GSet x = random_gset(g, rng), y = random_gset(g, rng), z = random_gset(g, rng);
    auto s = random_element(x, y, rng), t = random_element(y, z, rng);
    CHECK(dual(dual(s)) == s);
    CHECK(dual(compose(t, s)) == compose(dual(s), dual(t)));
  }
}

TEST_CASE("table of marks and Burnside ring") {
  CHECK(table_of_marks(*group("C2")) == Matrix{{2, 0}, {1, 1}});
  for (const auto& name : FiniteGroup::named_groups()) {
    GroupPtr g = group(name);
    const std::size_t n = g->class_count();
    Matrix marks = table_of_marks(*g);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(marks(i, j) == static_cast<unsigned long>(brute_mark(*g, static_cast<int>(i), static_cast<int>(j))));
    Matrix ring = burnside_ring(g);
    CHECK(ring == burnside_ring_by_products(g));
    // marks are ring homomorphisms A(G) -> Z
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Integer lhs = 0;
          for (std::size_t l = 0; l < n; ++l) lhs += ring(l, i * n + j) * marks(l, k);
          CHECK(lhs == marks(i, k) * marks(j, k));
        }
  }
}

TEST_CASE("transfer and restriction spans") {
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    for (const auto& phi : g->all_maps()) {
      BurnsideElement tr = transfer_span(g, phi), res = restriction_span(g, phi);
      CHECK(dual(tr) == res);
      // res o tr over an automorphism is the identity
      if (g->is_iso(phi)) CHECK(compose(res, tr) == BurnsideElement::identity(GSet::orbit(g, phi.source)));
    }
  }
}
