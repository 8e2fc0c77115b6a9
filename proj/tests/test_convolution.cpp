#include "oracles.hpp"

using namespace mktest;

namespace {

bool same_tables(const GreenFunctor& a, const GreenFunctor& b) {
  for (int k = 0; k < static_cast<int>(a.underlying().level_count()); ++k) {
    const AbGroup& lvl = a.underlying().level(k);
    if (!(lvl.normalize_map(a.table(k)) == lvl.normalize_map(b.table(k)))) return false;
    if (!lvl.equal(a.unit(k), b.unit(k))) return false;
  }
  return true;
}

std::vector<GreenFunctor> sample_rings(const GroupPtr& g) {
  return {burnside_green(g), fixed_point_green(g), fixed_point_green(g, 2), k0_green(g)};
}

}  // namespace

TEST_CASE("the Burnside functor is a unit") {
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    CAPTURE(name);
    MackeyFunctor unit = representable(GSet::point(g));
    for (const auto& m : sample_functors(g)) {
      BoxProduct b(unit, m);
      IsoWitness w = box_unit_iso(b);
      CHECK(compose(w.inverse, w.forward) == MackeyMorphism::identity(b.object()));
      CHECK(compose(w.forward, w.inverse) == MackeyMorphism::identity(m));
      CHECK_FALSE(validation_failure(b.object(), {Validation::kFull, 40, 5}));
    }
    CHECK(BoxProduct(MackeyFunctor::zero(g), unit).object().is_zero());
  }
}

TEST_CASE("box product levels match the coend over orbits") {
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    CAPTURE(name);
    auto samples = sample_functors(g);
    for (std::size_t i = 0; i < samples.size(); ++i)
      for (std::size_t j = i; j < samples.size(); ++j) {
        if (g->order() == 6 && (i + j) % 2) continue;  // keep the larger groups quick
        BoxProduct b(samples[i], samples[j]);
        for (int l = 0; l < static_cast<int>(g->class_count()); ++l) {
          AbGroup oracle = coend_box_level(samples[i], samples[j], l);
          CHECK_MESSAGE(isomorphic(oracle, b.object().level(l)),
                        oracle.to_string() << " vs " << b.object().level(l).to_string() << " at " << l);
        }
      }
  }
}

TEST_CASE("symmetry is an involution") {
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    auto samples = sample_functors(g);
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      BoxProduct mn(samples[i], samples[i + 1]), nm(samples[i + 1], samples[i]);
      IsoWitness s = box_comm_iso(mn, nm), t = box_comm_iso(nm, mn);
      CHECK(compose(t.forward, s.forward) == MackeyMorphism::identity(mn.object()));
    }
  }
}

TEST_CASE("box distributes over direct sums") {
  for (const auto& name : {"C2", "C3", "S3"}) {
    GroupPtr g = group(name);
    auto samples = sample_functors(g);
    DirectSumResult sum = direct_sum({samples[1], samples[2]});
    BoxProduct whole(sum.object, samples[3]);
    BoxProduct a(samples[1], samples[3]), b(samples[2], samples[3]);
    for (int l = 0; l < static_cast<int>(g->class_count()); ++l)
      CHECK(isomorphic(whole.object().level(l), direct_sum({a.object().level(l), b.object().level(l)})));
  }
}

TEST_CASE("representables are monoidal, and the associator agrees with them") {
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    CAPTURE(name);
    auto orb = orbits(g);
    for (const auto& x : orb)
      for (const auto& y : orb) {
        RepresentableMonoidal r = representable_monoidal(x, y);
        CHECK(compose(r.iso.inverse, r.iso.forward) == MackeyMorphism::identity(r.box.object()));
        CHECK(compose(r.iso.forward, r.iso.inverse) == MackeyMorphism::identity(r.product));
      }
  }
  // (A_X box A_Y) box A_Z -> A_{XYZ} two ways
  for (const auto& name : {"trivial", "C2", "C3"}) {
    GroupPtr g = group(name);
    auto orb = orbits(g);
    for (const auto& x : orb)
      for (const auto& y : orb)
        for (const auto& z : orb) {
          MackeyFunctor ax = representable(x), ay = representable(y), az = representable(z);
          TripleBox t = box_associator(ax, ay, az);
          RepresentableMonoidal xy = representable_monoidal(x, y), yz = representable_monoidal(y, z);
          RepresentableMonoidal xy_z = representable_monoidal(product_set(x, y), z);
          RepresentableMonoidal x_yz = representable_monoidal(x, product_set(y, z));
          MackeyMorphism left = compose(xy_z.iso.forward, box_map(xy.iso.forward, MackeyMorphism::identity(az), t.mn_p, xy_z.box));
          MackeyMorphism right = compose(
              x_yz.iso.forward,
              compose(box_map(MackeyMorphism::identity(ax), yz.iso.forward, t.m_np, x_yz.box), t.assoc.forward));
          CHECK(left == right);
        }
  }
}

TEST_CASE("free evaluation and internal homs") {
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    CAPTURE(name);
    auto orb = orbits(g);
    for (const auto& m : sample_functors(g))
      for (const auto& x : orb) {
        FreeEvaluation fe = free_evaluation(m, x);
        CHECK(compose(fe.iso.inverse, fe.iso.forward) == MackeyMorphism::identity(fe.box.object()));
        MackeyFunctor f = internal_hom_rep(x, m);
        for (int j = 0; j < static_cast<int>(g->class_count()); ++j) {
          CHECK(isomorphic(fe.shifted.level(j), m.value(product_set(x, orb[j]))));
          CHECK(isomorphic(f.level(j), m.value(product_set(x, orb[j]))));
        }
      }
    // F(A_pt, M) = M
    for (const auto& m : sample_functors(g)) CHECK(level_invariants(internal_hom_rep(GSet::point(g), m)) == level_invariants(m));
  }
  GroupPtr c2 = group("C2");
  MackeyFunctor f = internal_hom_rep(GSet::orbit(c2, 0), fixed_point_mackey(Representation::trivial(c2, AbGroup::free(1))));
  CHECK(f.level(1).invariants() == std::vector<Integer>{0});
}

TEST_CASE("hom(N box A_X, M) and hom(N, F(A_X, M)) agree") {
  for (const auto& name : {"C2", "C3", "S3"}) {
    GroupPtr g = group(name);
    auto samples = sample_functors(g);
    for (const auto& x : orbits(g))
      for (std::size_t i = 1; i < 4; ++i) {
        const MackeyFunctor& n = samples[i];
        const MackeyFunctor& m = samples[(i + 1) % samples.size()];
        BoxProduct b(n, representable(x));
        CHECK(isomorphic(HomGroup(b.object(), m).group(), HomGroup(n, internal_hom_rep(x, m)).group()));
      }
  }
}

TEST_CASE("evaluation at the free orbit is monoidal") {
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    auto samples = sample_functors(g);
    for (const auto& m : samples)
      for (const auto& n : samples) {
        FreeOrbitMonoidal f = free_orbit_monoidal(BoxProduct(m, n));
        CHECK(f.is_iso);
        CHECK(f.equivariant);
      }
  }
}

TEST_CASE("Green functors: levelwise and box-product forms round-trip") {
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    CAPTURE(name);
    for (const auto& r : sample_rings(g)) {
      CHECK_FALSE(green_failure(r.underlying(), r.tables(), r.units()));
      BoxProduct rr(r.underlying(), r.underlying());
      GreenFunctor again = green_from_mult(rr, r.mult(rr), r.unit_map());
      CHECK(same_tables(r, again));
    }
    // top level of the Burnside Green functor is the Burnside ring
    CHECK(burnside_green(g).table(g->top_class()) == burnside_ring(g));
  }
}

TEST_CASE("Green axiom violations are reported") {
  GroupPtr g = group("C2");
  MackeyFunctor a = representable(GSet::point(g));
  std::vector<Matrix> tables{Matrix{{1}}, Matrix{{3, 1, 1, 0}, {-2, 0, 0, 1}}};
  std::vector<Vector> units{Vector{1}, Vector{0, 1}};
  auto fail = green_failure(a, tables, units);
  REQUIRE(fail);
  CHECK(fail->find("Frobenius") != std::string::npos);
  CHECK_THROWS_AS(green_from_levelwise(a, tables, units), VerificationError);
  // a non-unital unit
  GreenFunctor b = burnside_green(g);
  std::vector<Vector> bad_units{Vector{1}, Vector{1, 0}};
  CHECK(green_failure(a, b.tables(), bad_units));
  // FP(Z) over C2 has tr = 2 and passes
  GreenFunctor fp = fixed_point_green(g);
  CHECK(fp.underlying().level(1).invariants() == std::vector<Integer>{0});
  CHECK(fp.underlying().tr(g->maps(0, 1)[0]) == Matrix{{2}});
}

TEST_CASE("modules satisfy the action axioms") {
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    CAPTURE(name);
    GreenFunctor a = burnside_green(g);
    for (const auto& r : sample_rings(g)) {
      GreenModule reg = regular_module(r);
      CHECK_FALSE(module_failure(r, reg.underlying(), reg.tables()));
      BoxProduct rm(r.underlying(), reg.underlying());
      GreenModule again = module_from_action(r, rm, reg.action(rm));
      for (int k = 0; k < static_cast<int>(g->class_count()); ++k)
        CHECK(reg.underlying().level(k).normalize_map(again.table(k)) == reg.underlying().level(k).normalize_map(reg.table(k)));
    }
    for (const auto& m : sample_functors(g)) {
      GreenModule bm = burnside_module(a, m);
      CHECK_FALSE(module_failure(a, m, bm.tables()));
    }
    GreenFunctor fp = fixed_point_green(g, 2);
    GreenModule sm = scalar_module(fp, fixed_point_mackey(Representation::trivial(g, AbGroup({Integer(2)}))));
    CHECK_FALSE(module_failure(fp, sm.underlying(), sm.tables()));
  }
}
