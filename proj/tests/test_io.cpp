#include "support.hpp"

using namespace mktest;

namespace {

bool same_functor(const MackeyFunctor& a, const MackeyFunctor& b) {
  if (a.level_count() != b.level_count()) return false;
  for (int k = 0; k < static_cast<int>(a.level_count()); ++k)
    if (a.level(k).moduli() != b.level(k).moduli()) return false;
  const FiniteGroup& g = *a.group();
  for (const auto& phi : g.all_maps()) {
    const AbGroup& s = a.level(phi.source);
    const AbGroup& t = a.level(phi.target);
    if (!(s.normalize_map(a.res(phi)) == s.normalize_map(b.res(phi)))) return false;
    if (!(t.normalize_map(a.tr(phi)) == t.normalize_map(b.tr(phi)))) return false;
  }
  return true;
}

Json parse(const char* s) { return Json::parse(s); }

}  // namespace

TEST_CASE("groups round-trip") {
  for (const auto& name : FiniteGroup::named_groups()) {
    GroupPtr g = group(name);
    Json j = group_to_json(g);
    CHECK(j == Json(name));
    CHECK(group_from_json(j) == g);  // interned
  }
  GroupPtr c3 = group_from_json(parse(R"({"kind":"table","table":[[0,1,2],[1,2,0],[2,0,1]]})"));
  CHECK(c3->order() == 3);
  GroupPtr v = group_from_json(parse(R"({"kind":"perm","degree":4,"generators":[[1,0,3,2],[2,3,0,1]]})"));
  CHECK(v->class_count() == 5);
  CHECK(group_from_json(group_to_json(v))->table() == v->table());
}

TEST_CASE("G-sets, spans and matrices round-trip") {
  std::mt19937_64 rng(71);
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    for (int trial = 0; trial < 6; ++trial) {
      GSet x = random_shuffled_gset(g, rng, 2), y = random_gset(g, rng, 2);
      CHECK(gset_from_json(gset_to_json(x), g) == x);
      CHECK(gset_from_json(gset_to_json(y), g) == y);
      BurnsideElement e = random_element(x, y, rng);
      CHECK(span_from_json(span_to_json(e), g) == e);
    }
  }
  Matrix m{{1, -2}, {30, 4}};
  CHECK(matrix_from_json(matrix_to_json(m), 2, 2) == m);
  // integers beyond 64 bits travel as strings
  Integer big("123456789012345678901234567890");
  Json jb = vector_to_json(Vector{big});
  CHECK(vector_from_json(jb, 1) == Vector{big});
}

TEST_CASE("Mackey, Green and module files round-trip") {
  for (const auto& name : battery()) {
    GroupPtr g = group(name);
    CAPTURE(name);
    for (const auto& m : sample_functors(g)) {
      Json j = mackey_to_json(m);
      MackeyFunctor back = mackey_from_json(j, {Validation::kFull, 40, 1});
      CHECK(same_functor(m, back));
      // and through text
      CHECK(same_functor(m, mackey_from_json(Json::parse(j.dump()))));
    }
    for (const auto& r : {burnside_green(g), fixed_point_green(g, 2), k0_green(g)}) {
      GreenFunctor back = green_from_json(green_to_json(r));
      CHECK(same_functor(r.underlying(), back.underlying()));
      for (int k = 0; k < static_cast<int>(g->class_count()); ++k) CHECK(back.table(k) == r.table(k));
      GreenModule reg = regular_module(r);
      GreenModule mb = module_from_json(module_to_json(reg));
      for (int k = 0; k < static_cast<int>(g->class_count()); ++k) CHECK(mb.table(k) == reg.table(k));
    }
  }
}

TEST_CASE("shortcut kinds") {
  MackeyFunctor b = mackey_from_json(parse(R"({"kind":"burnside","group":"C2"})"));
  CHECK(b.ranks() == std::vector<std::size_t>{1, 2});
  MackeyFunctor f = mackey_from_json(parse(R"({"kind":"fixed_point","group":"C2","representation":{"trivial":[2]}})"));
  CHECK(f.level(1).invariants() == std::vector<Integer>{2});
  MackeyFunctor r = mackey_from_json(parse(R"({"kind":"representable","group":"S3","gset":"C2"})"));
  CHECK(level_invariants(r) == level_invariants(representable(GSet::orbit(group("S3"), 1))));
  MackeyFunctor s = mackey_from_json(parse(R"({"kind":"fixed_point","group":"C2","representation":{"sign":"e"}})"));
  CHECK(s.level(1).is_trivial());
}

TEST_CASE("filtered complexes round-trip") {
  Json j = parse(R"({"kind":"tor_skeletal","group":"C2","ring":{"kind":"fixed_point_green","group":"C2","modulus":0},
                     "left":{"kind":"fixed_point","group":"C2","representation":{"trivial":[2]}},
                     "right":{"kind":"fixed_point","group":"C2","representation":{"trivial":[2]}},"pmax":2})");
  FilteredComplex f = filtered_complex_from_json(j);
  FilteredComplex back = filtered_complex_from_json(filtered_complex_to_json(f));
  REQUIRE(back.summands.size() == f.summands.size());
  for (std::size_t i = 0; i < f.summands.size(); ++i) CHECK(same_functor(back.summands[i].object, f.summands[i].object));
  REQUIRE(back.blocks.size() == f.blocks.size());
  for (std::size_t i = 0; i < f.blocks.size(); ++i) CHECK(back.blocks[i].map == f.blocks[i].map);
}

TEST_CASE("malformed input is rejected") {
  const char* bad[] = {
      R"({"kind":"burnside"})",
      R"({"kind":"nonsense","group":"C2"})",
      R"({"kind":"burnside","group":"X9"})",
      R"({"kind":"representable","group":"C2","gset":"C7"})",
      R"({"kind":"mackey","group":"C2","levels":{"e":[0]},"maps":[]})",
      R"({"kind":"mackey","group":"C2","levels":{"e":[0],"C2":[0],"e":[0]},"maps":[]})",
      R"({"kind":"mackey","group":"C2","levels":{"e":[0],"C2":[0]},"maps":[]})",
      R"({"kind":"mackey","group":"C2","levels":{"e":[0],"C2":[0]},
          "maps":[{"source":"e","target":"C2","point":0,"res":[[1,2]],"tr":[[2]]}]})",
      R"({"kind":"mackey","group":"C2","levels":{"e":[0],"C2":[0]},
          "maps":[{"source":"e","target":"C2","point":0,"res":[[1]],"tr":[["x"]]}]})",
      R"({"kind":"fixed_point","group":"C2","representation":{"moduli":[0],"action":[[[1]]]}})",
  };
  for (const char* s : bad) {
    std::string text = s;
    CAPTURE(text);
    CHECK_THROWS_AS(mackey_from_json(parse(s)), InputError);
  }
  CHECK_THROWS_AS(gset_from_json(parse(R"({"size":2,"action":[[0,1],[0,0]]})"), group("C2")), std::exception);
  CHECK_THROWS_AS(matrix_from_json(parse("[[1,2],[3]]"), 2, 2), InputError);
  // well-formed but not a Mackey functor
  CHECK_THROWS_AS(mackey_from_json(parse(R"({"kind":"mackey","group":"C2","levels":{"e":[0],"C2":[0]},
          "maps":[{"source":"e","target":"C2","point":0,"res":[[1]],"tr":[[3]]}]})")),
                  VerificationError);
}
