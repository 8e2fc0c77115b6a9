#include <functional>

#include "support.hpp"

using namespace mktest;

namespace {

// Equivariant bijection by plain backtracking over point assignments.
bool brute_isomorphic(const GSet& x, const GSet& y) {
  if (x.size() != y.size()) return false;
  const std::size_t n = x.size();
  const std::size_t order = x.group()->order();
  std::vector<int> f(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) return true;
    for (std::size_t t = 0; t < n; ++t) {
      if (used[t]) continue;
      f[i] = static_cast<int>(t);
      bool ok = true;
      for (std::size_t a = 0; a <= i && ok; ++a)
        for (Element g = 0; g < static_cast<Element>(order) && ok; ++g) {
          int ga = x.act(g, static_cast<int>(a));
          if (ga <= static_cast<int>(i) && f[ga] != y.act(g, f[a])) ok = false;
        }
      if (!ok) continue;
      used[t] = true;
      if (rec(i + 1)) return true;
      used[t] = false;
    }
    f[i] = -1;
    return false;
  };
  return rec(0);
}

bool equivariant(const GMap& f) {
  const GSet& x = f.source();
  for (Element g = 0; g < static_cast<Element>(x.group()->order()); ++g)
    for (int a = 0; a < static_cast<int>(x.size()); ++a)
      if (f(x.act(g, a)) != f.target().act(g, f(a))) return false;
  return true;
}

}  // namespace

TEST_CASE("isomorphism search agrees with backtracking") {
  std::mt19937_64 rng(21);
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    for (int trial = 0; trial < 25; ++trial) {
      GSet x = random_shuffled_gset(g, rng, 2);
      GSet y = trial % 2 ? random_shuffled_gset(g, rng, 2) : relabel(x, [&] {
        std::vector<int> p(x.size());
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<int>(p.size() - 1 - i);
        return p;
      }());
      if (x.size() > 8 || y.size() > 8) continue;
      auto iso = find_isomorphism(x, y);
      CHECK(iso.has_value() == brute_isomorphic(x, y));
      if (iso) {
        CHECK(iso->is_bijective());
        CHECK(equivariant(*iso));
      }
      CHECK((x.orbit_type() == y.orbit_type()) == iso.has_value());
    }
  }
}

TEST_CASE("orbits, stabilizers and decomposition") {
  std::mt19937_64 rng(22);
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    for (int trial = 0; trial < 10; ++trial) {
      GSet x = random_shuffled_gset(g, rng, 3);
      std::size_t total = 0;
      for (const auto& o : x.orbits()) {
        total += o.points.size();
        CHECK(x.stabilizer(o.points[0]) == g->rep(o.cls));
        // orbit-stabilizer
        CHECK(o.points.size() * g->subgroup_class(o.cls).order == g->order());
      }
      CHECK(total == x.size());
      OrbitDecomposition d = orbit_decompose(x);
      CHECK(d.iso.is_bijective());
      CHECK(equivariant(d.iso));
      CHECK(d.canonical == GSet::from_orbits(g, d.type));
    }
  }
}

TEST_CASE("products, coproducts and pullbacks") {
  std::mt19937_64 rng(23);
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    GSet x = random_shuffled_gset(g, rng, 2), y = random_shuffled_gset(g, rng, 2);
    ProductResult p = product(x, y);
    CHECK(p.set.size() == x.size() * y.size());
    CHECK(equivariant(p.first));
    CHECK(equivariant(p.second));
    for (int a = 0; a < static_cast<int>(x.size()); ++a)
      for (int b = 0; b < static_cast<int>(y.size()); ++b) {
        int i = a * static_cast<int>(y.size()) + b;
        CHECK(p.first(i) == a);
        CHECK(p.second(i) == b);
      }
    // |(X x Y)^H| = |X^H| |Y^H|
    for (Subset h : g->subgroups())
      CHECK(fixed_points(p.set, h).size() == fixed_points(x, h).size() * fixed_points(y, h).size());
    CoproductResult c = coproduct(x, y);
    CHECK(c.set.size() == x.size() + y.size());
    CHECK(equivariant(c.left));
    CHECK(equivariant(c.right));
    // pullback of the two projections from X x Y and Y x X onto Y
    ProductResult q = product(y, x);
    PullbackResult pb = pullback(p.second, q.first);
    CHECK(pb.set.size() == x.size() * y.size() * x.size());
    for (int i = 0; i < static_cast<int>(pb.set.size()); ++i) CHECK(p.second(pb.first(i)) == q.first(pb.second(i)));
    CHECK(equivariant(pb.first));
    CHECK(equivariant(pb.second));
  }
}

TEST_CASE("malformed G-sets are rejected") {
  GroupPtr g = group("C2");
  CHECK_THROWS_AS(GSet(g, 2, {0, 1, 0, 0}), std::invalid_argument);  // not a permutation
  CHECK_THROWS_AS(GSet(g, 2, {1, 0, 1, 0}), std::invalid_argument);  // identity moves points
  GSet x = GSet::orbit(g, 0);
  CHECK_THROWS_AS(GMap(x, GSet::point(g), {0, 1}), std::invalid_argument);
}
