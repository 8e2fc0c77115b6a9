#include "oracles.hpp"

using namespace mktest;

TEST_CASE("subgroups and classes match exhaustive enumeration") {
  for (const auto& name : FiniteGroup::named_groups()) {
    CAPTURE(name);
    GroupPtr g = group(name);
    auto subs = brute_subgroups(*g);
    std::vector<Subset> lib = g->subgroups();
    std::sort(subs.begin(), subs.end());
    std::sort(lib.begin(), lib.end());
    CHECK(lib == subs);
    CHECK(g->class_count() == brute_class_count(*g, subs));
    // classes ordered by subgroup order
    for (std::size_t k = 1; k < g->class_count(); ++k) CHECK(g->subgroup_class(k - 1).order <= g->subgroup_class(k).order);
    CHECK(g->subgroup_class(0).order == 1);
    CHECK(g->subgroup_class(g->top_class()).order == g->order());
  }
}

TEST_CASE("derived class counts") {
  CHECK(group("C2")->class_count() == 2);
  CHECK(group("C4")->class_count() == 3);
  CHECK(group("C2xC2")->class_count() == 5);
  CHECK(group("S3")->class_count() == 4);
}

TEST_CASE("double cosets match exhaustive enumeration") {
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    for (Subset h : g->subgroups())
      for (Subset k : g->subgroups()) CHECK(g->double_cosets(h, k).size() == brute_double_cosets(*g, h, k));
  }
  GroupPtr s3 = group("S3");
  int c2 = s3->class_by_label("C2");
  CHECK(s3->double_cosets(s3->rep(c2), s3->rep(c2)).size() == 2);
}

TEST_CASE("group constructors agree") {
  // C2xC2 from a permutation representation on four points
  GroupPtr v = FiniteGroup::from_permutations(4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  CHECK(v->order() == 4);
  CHECK(v->class_count() == 5);
  // identity placed elsewhere in the table is relabelled to 0
  GroupPtr c3 = FiniteGroup::from_table({{1, 2, 0}, {2, 0, 1}, {0, 1, 2}});
  CHECK(c3->order() == 3);
  CHECK(c3->mul(0, 1) == 1);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteGroup::named("X9"), std::invalid_argument);
}

TEST_CASE("orbit maps compose associatively and generating maps generate") {
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    const auto& all = g->all_maps();
    for (const auto& f : all) {
      CHECK(g->compose(g->identity(f.target), f) == f);
      CHECK(g->compose(f, g->identity(f.source)) == f);
      for (const auto& h : g->maps(f.target, f.target))
        for (const auto& k : g->maps(h.target, h.target))
          CHECK(g->compose(k, g->compose(h, f)) == g->compose(g->compose(k, h), f));
    }
    // closure of the generating maps under composition reaches every map
    std::set<OrbitMap> reached;
    for (int k = 0; k < static_cast<int>(g->class_count()); ++k) reached.insert(g->identity(k));
    for (const auto& m : g->generating_maps()) reached.insert(m);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<OrbitMap> cur(reached.begin(), reached.end());
      for (const auto& a : cur)
        for (const auto& b : cur)
          if (a.target == b.source && reached.insert(g->compose(b, a)).second) grew = true;
    }
    CHECK(reached.size() == all.size());
    // the map G/H_s -> G/H_t really is equivariant
    for (const auto& m : all) CHECK_NOTHROW(orbit_gmap(g, m));
  }
}

TEST_CASE("pullbacks of orbit maps count points") {
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    for (const auto& f : g->all_maps())
      for (const auto& h : g->all_maps()) {
        if (f.target != h.target) continue;
        std::size_t total = 0;
        for (const auto& o : g->pullback(f, h)) total += g->order() / g->subgroup_class(o.cls).order;
        PullbackResult p = pullback(orbit_gmap(g, f), orbit_gmap(g, h));
        CHECK(total == p.set.size());
      }
  }
}
