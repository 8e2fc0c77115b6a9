#include "oracles.hpp"

using namespace mktest;

namespace {

MackeyFunctor fp(const GroupPtr& g, long modulus) {
  return fixed_point_mackey(Representation::trivial(g, modulus == 0 ? AbGroup::free(1) : AbGroup({Integer(modulus)})));
}

struct Triple {
  GreenFunctor ring;
  GreenModule m, n;
};

// Small (R, M, N) triples; Burnside resolutions grow quickly with the group.
std::vector<Triple> triples(const GroupPtr& g) {
  GreenFunctor a = burnside_green(g);
  GreenFunctor z = fixed_point_green(g);
  std::vector<Triple> out;
  out.push_back({a, burnside_module(a, fp(g, 2)), burnside_module(a, fp(g, 0))});
  out.push_back({z, scalar_module(z, fp(g, 2)), scalar_module(z, fp(g, 2))});
  out.push_back({z, regular_module(z), scalar_module(z, fp(g, 3))});
  return out;
}

bool same_levels(const std::vector<MackeyFunctor>& a, const std::vector<MackeyFunctor>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t p = 0; p < a.size(); ++p)
    if (level_invariants(a[p]) != level_invariants(b[p])) return false;
  return true;
}

}  // namespace

TEST_CASE("resolutions are exact") {
  for (const auto& name : {"trivial", "C2", "C3"}) {
    GroupPtr g = group(name);
    CAPTURE(name);
    for (const auto& t : triples(g)) {
      FreeResolution r = resolution(t.n, 3);
      auto fail = resolution_failure(r);
      CHECK_MESSAGE(!fail, (fail ? *fail : ""));
      for (std::size_t p = 1; p < r.differentials.size(); ++p)
        CHECK(compose(r.differentials[p - 1], r.differentials[p]).is_zero());
    }
  }
  GroupPtr s3 = group("S3");
  GreenFunctor z = fixed_point_green(s3);
  CHECK_FALSE(resolution_failure(resolution(scalar_module(z, fp(s3, 2)), 2)));
}

TEST_CASE("trivial resolutions") {
  GroupPtr g = group("C2");
  GreenFunctor z = fixed_point_green(g);
  FreeResolution self = resolution(regular_module(z), 2);
  CHECK(self.finite);
  CHECK(self.modules.size() >= 1);
  for (std::size_t p = 1; p < self.modules.size(); ++p) CHECK(self.modules[p].generators.empty());
  FreeResolution zero = resolution(scalar_module(z, MackeyFunctor::zero(g)), 2);
  CHECK(zero.finite);
  for (const auto& f : zero.modules) CHECK(f.generators.empty());
}

TEST_CASE("free modules and their adjunction") {
  for (const auto& name : {"C2", "C3", "S3"}) {
    GroupPtr g = group(name);
    std::vector<GreenFunctor> rings{burnside_green(g), fixed_point_green(g)};
    for (const auto& r : rings)
      for (const auto& x : orbits(g)) {
        FreeModule f = free_module(r, x);
        for (int j = 0; j < static_cast<int>(g->class_count()); ++j)
          CHECK(isomorphic(f.underlying().level(j), r.underlying().value(product_set(x, orbits(g)[j]))));
        bool burnside = &r == &rings[0];
        for (const auto& m : {regular_module(r), burnside ? burnside_module(r, fp(g, 2)) : scalar_module(r, fp(g, 2))})
          CHECK(free_adjunction(f, m).is_iso);
      }
    // A_pt-free on X is A_X
    FreeModule ax = free_module(burnside_green(g), GSet::orbit(g, 0));
    CHECK(level_invariants(ax.underlying()) == level_invariants(representable(GSet::orbit(g, 0))));
  }
  GroupPtr c2 = group("C2");
  FreeModule f = free_module(fixed_point_green(c2), GSet::orbit(c2, 0));
  CHECK(f.underlying().level(0).invariants() == std::vector<Integer>{0, 0});
  CHECK(f.underlying().level(1).invariants() == std::vector<Integer>{0});
}

TEST_CASE("Tor_0 is the relative box product, with a witness") {
  for (const auto& name : {"trivial", "C2", "C3"}) {
    GroupPtr g = group(name);
    CAPTURE(name);
    for (const auto& t : triples(g)) {
      TorResult tr = tor(t.m, t.n, 1);
      RelBox rb = rel_box(t.m, t.n);
      IsoWitness w = tor0_witness(tr, t.m, rb);
      CHECK(compose(w.inverse, w.forward) == MackeyMorphism::identity(tr.groups[0]));
      CHECK(level_invariants(rb.object()) == level_invariants(rel_box_coequalizer(t.m, t.n).object));
    }
  }
}

TEST_CASE("M box over the Burnside ring is the plain box product") {
  for (const auto& name : {"C2", "S3"}) {
    GroupPtr g = group(name);
    GreenFunctor a = burnside_green(g);
    auto samples = sample_functors(g);
    RelBox rb = rel_box(burnside_module(a, samples[1]), burnside_module(a, samples[2]));
    CHECK(level_invariants(rb.object()) == level_invariants(BoxProduct(samples[1], samples[2]).object()));
  }
}

TEST_CASE("Tor against free modules vanishes in positive degrees") {
  for (const auto& name : {"C2", "C3"}) {
    GroupPtr g = group(name);
    CAPTURE(name);
    for (const auto& t : triples(g))
      for (const auto& x : orbits(g)) {
        FreeModule f = free_module(t.ring, x);
        TorResult tr = tor(t.m, f.module, 3);
        for (int p = 1; p <= 3; ++p) CHECK(tr.groups[p].is_zero());
        // Tor_0 = M(X x -)
        for (int j = 0; j < static_cast<int>(g->class_count()); ++j)
          CHECK(isomorphic(tr.groups[0].level(j), t.m.underlying().value(product_set(x, orbits(g)[j]))));
      }
  }
}

TEST_CASE("Tor is symmetric and independent of the cover") {
  for (const auto& name : {"C2", "C3"}) {
    GroupPtr g = group(name);
    CAPTURE(name);
    for (const auto& t : triples(g)) {
      TorResult mn = tor(t.m, t.n, 2);
      TorResult nm = tor(t.n, t.m, 2);
      TorResult other = tor(t.m, t.n, 2, CoverOrder::kBottomUp);
      CHECK(same_levels(mn.groups, nm.groups));
      CHECK(same_levels(mn.groups, other.groups));
    }
  }
}

TEST_CASE("Tor of Z/2 with itself over FP(Z) on C2") {
  GroupPtr g = group("C2");
  GreenFunctor z = fixed_point_green(g);
  GreenModule m = scalar_module(z, fp(g, 2));
  TorResult t = tor(m, m, 2);
  // Tor_p(Z/2, Z/2) over Z at the free level: Z/2, Z/2, 0
  CHECK(t.groups[0].level(0).invariants() == std::vector<Integer>{2});
  CHECK(t.groups[1].level(0).invariants() == std::vector<Integer>{2});
  CHECK(t.groups[2].level(0).invariants().empty());
}

TEST_CASE("additivity of Tor in the second slot") {
  GroupPtr g = group("C2");
  GreenFunctor z = fixed_point_green(g);
  GreenModule m = scalar_module(z, fp(g, 2));
  GreenModule a = scalar_module(z, fp(g, 3)), b = scalar_module(z, fp(g, 2));
  GreenModule ab = scalar_module(z, direct_sum({fp(g, 3), fp(g, 2)}).object);
  TorResult tab = tor(m, ab, 2), ta = tor(m, a, 2), tb = tor(m, b, 2);
  for (int p = 0; p <= 2; ++p)
    for (int k = 0; k < 2; ++k)
      CHECK(isomorphic(tab.groups[p].level(k), direct_sum({ta.groups[p].level(k), tb.groups[p].level(k)})));
}
