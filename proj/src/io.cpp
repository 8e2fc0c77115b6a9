#include "mackeykit/io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>

namespace mackeykit {

namespace {

std::string describe(const Json& j) {
  std::string s = j.dump();
  return s.size() > 60 ? s.substr(0, 57) + "..." : s;
}

[[noreturn]] void fail(const std::string& what) { throw InputError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing key '") + key + "' in " + describe(j));
  return j.at(key);
}

bool is_file_ref(const Json& j) {
  if (!j.is_string()) return false;
  const std::string& s = j.get_ref<const std::string&>();
  return s.size() > 5 && s.compare(s.size() - 5, 5, ".json") == 0;
}

// Nested values may name another file instead of being inline.
Json deref(const Json& j) { return is_file_ref(j) ? load_json_file(j.get<std::string>()) : j; }

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<long long>()));
  if (j.is_number_unsigned()) return Integer(static_cast<unsigned long>(j.get<unsigned long long>()));
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0) fail("not an integer: " + describe(j));
    return v;
  }
  fail("not an integer: " + describe(j));
}

Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

int int_from_json(const Json& j) {
  if (!j.is_number_integer()) fail("not a small integer: " + describe(j));
  return j.get<int>();
}

std::vector<std::vector<int>> int_table(const Json& j) {
  if (!j.is_array()) fail("expected a list of lists: " + describe(j));
  std::vector<std::vector<int>> out;
  for (const auto& row : j) {
    if (!row.is_array()) fail("expected a list of lists: " + describe(j));
    std::vector<int> r;
    for (const auto& v : row) r.push_back(int_from_json(v));
    out.push_back(std::move(r));
  }
  return out;
}

int class_index(const GroupPtr& g, const Json& label) {
  if (!label.is_string()) fail("subgroup classes are named by labels: " + describe(label));
  try {
    return g->class_by_label(label.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

std::mutex group_mutex;
std::map<std::string, GroupPtr>& group_cache() {
  static std::map<std::string, GroupPtr> cache;
  return cache;
}

// Equal descriptions give the same group object, so functors read from
// separate files can be combined.
GroupPtr interned(const std::string& key, const std::function<GroupPtr()>& make) {
  std::lock_guard<std::mutex> lock(group_mutex);
  auto& cache = group_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  GroupPtr g = make();
  cache.emplace(key, g);
  return g;
}

GroupPtr group_of(const Json& j, const GroupPtr& fallback) {
  if (j.is_object() && j.contains("group")) return group_from_json(j.at("group"));
  if (!fallback) fail("missing key 'group' in " + describe(j));
  return fallback;
}

std::string kind_of(const Json& j) {
  if (!j.is_object()) fail("expected an object: " + describe(j));
  const Json& k = field(j, "kind");
  if (!k.is_string()) fail("'kind' must be a string");
  return k.get<std::string>();
}

// Per-level values keyed by subgroup-class label, in class order.
template <typename F>
void for_each_level(const GroupPtr& g, const Json& j, const char* what, F&& fn) {
  if (!j.is_object()) fail(std::string(what) + " must be an object keyed by subgroup-class labels");
  std::set<int> seen;
  for (auto it = j.begin(); it != j.end(); ++it) {
    int k = class_index(g, Json(it.key()));
    if (!seen.insert(k).second) fail(std::string(what) + ": level '" + it.key() + "' given twice");
  }
  for (int k = 0; k < static_cast<int>(g->class_count()); ++k) {
    const std::string& label = g->subgroup_class(k).label;
    if (!j.contains(label)) fail(std::string(what) + ": missing level '" + label + "'");
    fn(k, j.at(label));
  }
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail("'" + path + "' is not valid JSON: " + e.what());
  }
}

GroupPtr group_from_json(const Json& raw) {
  if (is_file_ref(raw)) return group_from_json(load_json_file(raw.get<std::string>()));
  if (raw.is_string()) {
    const std::string name = raw.get<std::string>();
    return interned("name:" + name, [&] {
      try {
        return FiniteGroup::named(name);
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    });
  }
  const std::string kind = kind_of(raw);
  const std::string name = raw.contains("name") ? raw.at("name").get<std::string>() : "";
  Json key = raw;
  try {
    if (kind == "table") {
      auto table = int_table(field(raw, "table"));
      return interned("json:" + key.dump(), [&] { return FiniteGroup::from_table(table, name); });
    }
    if (kind == "perm") {
      const int degree = int_from_json(field(raw, "degree"));
      auto gens = int_table(field(raw, "generators"));
      return interned("json:" + key.dump(), [&] { return FiniteGroup::from_permutations(degree, gens, name); });
    }
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  fail("unknown group kind '" + kind + "'");
}

Json group_to_json(const GroupPtr& g) {
  const auto names = FiniteGroup::named_groups();
  // a built-in name only when the multiplication table agrees
  if (std::find(names.begin(), names.end(), g->name()) != names.end() &&
      FiniteGroup::named(g->name())->table() == g->table())
    return g->name();
  Json table = Json::array();
  for (std::size_t a = 0; a < g->order(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < g->order(); ++b) row.push_back(g->mul(static_cast<Element>(a), static_cast<Element>(b)));
    table.push_back(std::move(row));
  }
  Json out = {{"kind", "table"}, {"table", std::move(table)}};
  if (!g->name().empty()) out["name"] = g->name();
  return out;
}

GroupPtr resolve_group(const std::string& arg) { return group_from_json(Json(arg)); }

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) fail("expected a matrix (list of rows): " + describe(j));
  Matrix m(rows, cols);
  if (rows == 0 && j.empty()) return m;
  if (j.size() != rows)
    fail("expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()) + ": " + describe(j));
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != cols)
      fail("expected rows of length " + std::to_string(cols) + ": " + describe(j));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = integer_from_json(row[c]);
  }
  return m;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Vector vector_from_json(const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) fail("expected a vector of length " + std::to_string(n) + ": " + describe(j));
  Vector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_to_json(x));
  return out;
}

Json abgroup_to_json(const AbGroup& a) { return vector_to_json(a.moduli()); }

AbGroup abgroup_from_json(const Json& j) {
  if (!j.is_array()) fail("a level is a list of moduli (0 for Z): " + describe(j));
  std::vector<Integer> moduli;
  for (const auto& x : j) {
    Integer m = integer_from_json(x);
    if (m < 0) m = -m;
    if (m != 1) moduli.push_back(m);
  }
  return AbGroup(std::move(moduli));
}

GSet gset_from_json(const Json& raw, const GroupPtr& fallback) {
  const Json j = deref(raw);
  if (j.is_string()) {
    if (!fallback) fail("a G-set label needs a group");
    const std::string s = j.get<std::string>();
    if (s == "pt") return GSet::point(fallback);
    if (s == "empty") return GSet::empty(fallback);
    return GSet::orbit(fallback, class_index(fallback, j));
  }
  if (!j.is_object()) fail("not a G-set: " + describe(j));
  GroupPtr g = group_of(j, fallback);
  if (j.contains("orbits")) {
    std::vector<std::pair<int, int>> counts;
    for (const auto& e : j.at("orbits")) {
      if (!e.is_array() || e.size() != 2) fail("orbits are [label, multiplicity] pairs: " + describe(e));
      counts.emplace_back(class_index(g, e[0]), int_from_json(e[1]));
      if (counts.back().second < 0) fail("negative orbit multiplicity");
    }
    return GSet::from_orbits(g, counts);
  }
  const int size = int_from_json(field(j, "size"));
  if (size < 0) fail("negative G-set size");
  auto rows = int_table(field(j, "action"));
  if (rows.size() != g->order()) fail("the action needs one row per group element");
  std::vector<int> action;
  for (const auto& r : rows) {
    if (r.size() != static_cast<std::size_t>(size)) fail("each action row lists the image of every point");
    action.insert(action.end(), r.begin(), r.end());
  }
  try {
    return GSet(g, static_cast<std::size_t>(size), std::move(action));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

Json gset_to_json(const GSet& x) {
  const GroupPtr& g = x.group();
  Json out = {{"group", group_to_json(g)}};
  OrbitDecomposition d = orbit_decompose(x);
  if (d.canonical == x) {
    Json orbits = Json::array();
    for (const auto& [k, mult] : d.type) orbits.push_back(Json::array({g->subgroup_class(k).label, mult}));
    out["orbits"] = std::move(orbits);
    return out;
  }
  out["size"] = x.size();
  Json rows = Json::array();
  for (std::size_t e = 0; e < g->order(); ++e) {
    Json row = Json::array();
    for (std::size_t p = 0; p < x.size(); ++p) row.push_back(x.act(static_cast<Element>(e), static_cast<int>(p)));
    rows.push_back(std::move(row));
  }
  out["action"] = std::move(rows);
  return out;
}

GSet resolve_gset(const std::string& arg, const GroupPtr& g) { return gset_from_json(Json(arg), g); }

BurnsideElement span_from_json(const Json& raw, const GroupPtr& fallback) {
  const Json j = deref(raw);
  GroupPtr g = group_of(j, fallback);
  GSet x = gset_from_json(field(j, "source"), g);
  GSet y = gset_from_json(field(j, "target"), g);
  BurnsideElement e(x, y);
  auto basis = hom_basis(x, y);
  for (const auto& t : field(j, "terms")) {
    const int k = class_index(g, field(t, "class"));
    const Json& p = field(t, "point");
    SpanCode c;
    if (p.is_array()) {
      if (p.size() != 2) fail("a span point is [x, y] or the index x * |Y| + y");
      const int px = int_from_json(p[0]), py = int_from_json(p[1]);
      if (px < 0 || py < 0 || px >= static_cast<int>(x.size()) || py >= static_cast<int>(y.size()))
        fail("span point out of range: " + describe(p));
      if (!x.is_fixed(px, g->rep(k)) || !y.is_fixed(py, g->rep(k)))
        fail("span point " + describe(p) + " is not fixed by the class representative");
      c = span_code(x, y, g->rep(k), px, py);
    } else {
      c = SpanCode{k, int_from_json(p)};
      if (!std::binary_search(basis.begin(), basis.end(), c))
        fail("not a canonical span code: " + describe(t) + " (give the point as [x, y] to canonicalize)");
    }
    e.add(c, t.contains("coefficient") ? integer_from_json(t.at("coefficient")) : Integer(1));
  }
  return e;
}

Json span_to_json(const BurnsideElement& e) {
  const GroupPtr& g = e.source().group();
  const std::size_t ny = e.target().size();
  Json terms = Json::array();
  for (const auto& [c, a] : e.terms())
    terms.push_back({{"class", g->subgroup_class(c.cls).label},
                     {"point", c.point},
                     {"pair", Json::array({c.point / static_cast<int>(ny), c.point % static_cast<int>(ny)})},
                     {"coefficient", integer_to_json(a)}});
  Json src = gset_to_json(e.source()), tgt = gset_to_json(e.target());
  src.erase("group");
  tgt.erase("group");
  return {{"group", group_to_json(g)}, {"source", src}, {"target", tgt}, {"terms", terms}};
}

Representation representation_from_json(const Json& raw, const GroupPtr& g) {
  const Json j = deref(raw);
  if (!j.is_object()) fail("not a representation: " + describe(j));
  const Integer modulus = j.contains("modulus") ? integer_from_json(j.at("modulus")) : Integer(0);
  try {
    if (j.contains("trivial")) return Representation::trivial(g, abgroup_from_json(j.at("trivial")));
    if (j.contains("permutation")) return Representation::permutation(gset_from_json(j.at("permutation"), g), modulus);
    if (j.contains("sign")) return Representation::sign(g, g->rep(class_index(g, j.at("sign"))), modulus);
    Representation r;
    r.group = g;
    r.module = abgroup_from_json(field(j, "moduli"));
    const Json& act = field(j, "action");
    if (!act.is_array() || act.size() != g->order()) fail("the action needs one matrix per group element");
    for (const auto& m : act) r.action.push_back(matrix_from_json(m, r.module.ngens(), r.module.ngens()));
    r.validate();
    return r;
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

MackeyFunctor mackey_from_json(const Json& raw, const ValidationOptions& opts, const GroupPtr& fallback) {
  const Json j = deref(raw);
  const std::string kind = kind_of(j);
  GroupPtr g = group_of(j, fallback);
  if (kind == "burnside") return representable(GSet::point(g));
  if (kind == "representable") return representable(gset_from_json(field(j, "gset"), g));
  if (kind == "fixed_point") return fixed_point_mackey(representation_from_json(field(j, "representation"), g));
  if (kind == "k0") return k0_mackey(g);
  if (kind == "zero") return MackeyFunctor::zero(g);
  if (kind == "green" || kind == "burnside_green" || kind == "fixed_point_green" || kind == "k0_green")
    return green_from_json(j, g).underlying();
  if (kind == "module" || kind == "regular" || kind == "burnside_module" || kind == "scalar" || kind == "free")
    return module_from_json(j).underlying();
  if (kind != "mackey") fail("unknown Mackey functor kind '" + kind + "'");

  MackeyData data;
  data.levels.resize(g->class_count());
  for_each_level(g, field(j, "levels"), "levels", [&](int k, const Json& v) { data.levels[k] = abgroup_from_json(v); });
  const auto& gens = g->generating_maps();
  std::vector<bool> given(gens.size(), false);
  data.res.resize(gens.size());
  data.tr.resize(gens.size());
  const Json& maps = field(j, "maps");
  if (!maps.is_array()) fail("'maps' must be a list");
  for (const auto& m : maps) {
    OrbitMap phi{class_index(g, field(m, "source")), class_index(g, field(m, "target")), int_from_json(field(m, "point"))};
    auto it = std::find(gens.begin(), gens.end(), phi);
    if (it == gens.end()) fail("not a generating map: " + describe(m));
    const std::size_t i = static_cast<std::size_t>(it - gens.begin());
    if (given[i]) fail("map given twice: " + describe(m));
    given[i] = true;
    const std::size_t ns = data.levels[phi.source].ngens(), nt = data.levels[phi.target].ngens();
    data.res[i] = matrix_from_json(field(m, "res"), ns, nt);
    data.tr[i] = matrix_from_json(field(m, "tr"), nt, ns);
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (given[i]) continue;
    if (!g->is_iso(gens[i]))
      fail("missing structure maps for " + g->subgroup_class(gens[i].source).label + " -> " +
           g->subgroup_class(gens[i].target).label + " at point " + std::to_string(gens[i].point));
    // omitted automorphisms act trivially
    data.res[i] = data.tr[i] = Matrix::identity(data.levels[gens[i].source].ngens());
  }
  return MackeyFunctor::from_generators(g, std::move(data), opts);
}

Json mackey_to_json(const MackeyFunctor& m) {
  const GroupPtr& g = m.group();
  Json levels = Json::object();
  for (int k = 0; k < static_cast<int>(g->class_count()); ++k)
    levels[g->subgroup_class(k).label] = abgroup_to_json(m.level(k));
  Json maps = Json::array();
  MackeyData data = m.generating_data();
  const auto& gens = g->generating_maps();
  for (std::size_t i = 0; i < gens.size(); ++i)
    maps.push_back({{"source", g->subgroup_class(gens[i].source).label},
                    {"target", g->subgroup_class(gens[i].target).label},
                    {"point", gens[i].point},
                    {"res", matrix_to_json(data.res[i])},
                    {"tr", matrix_to_json(data.tr[i])}});
  return {{"kind", "mackey"}, {"group", group_to_json(g)}, {"levels", levels}, {"maps", maps}};
}

Json mackey_levels_json(const MackeyFunctor& m) {
  const GroupPtr& g = m.group();
  Json out = Json::object();
  for (int k = 0; k < static_cast<int>(g->class_count()); ++k)
    out[g->subgroup_class(k).label] = vector_to_json(m.level(k).invariants());
  return out;
}

Json morphism_to_json(const MackeyMorphism& f) {
  const GroupPtr& g = f.source().group();
  Json comps = Json::object();
  for (int k = 0; k < static_cast<int>(g->class_count()); ++k) comps[g->subgroup_class(k).label] = matrix_to_json(f.at(k));
  return comps;
}

std::vector<Matrix> components_from_json(const Json& j, const MackeyFunctor& source, const MackeyFunctor& target) {
  std::vector<Matrix> comps(source.level_count());
  for_each_level(source.group(), j, "components", [&](int k, const Json& v) {
    comps[k] = matrix_from_json(v, target.level(k).ngens(), source.level(k).ngens());
  });
  return comps;
}

GreenData green_data_from_json(const Json& raw, const GroupPtr& fallback) {
  const Json j = deref(raw);
  const std::string kind = kind_of(j);
  GroupPtr g = group_of(j, fallback);
  if (kind != "green") {
    GreenFunctor r = green_from_json(j, g);
    return {r.underlying(), r.tables(), r.units()};
  }
  GreenData d;
  d.underlying = mackey_from_json(field(j, "mackey"), {Validation::kStructural, 0, 1}, g);
  d.tables.resize(g->class_count());
  d.units.resize(g->class_count());
  for_each_level(g, field(j, "tables"), "tables", [&](int k, const Json& v) {
    const std::size_t n = d.underlying.level(k).ngens();
    d.tables[k] = matrix_from_json(v, n, n * n);
  });
  for_each_level(g, field(j, "units"), "units", [&](int k, const Json& v) {
    d.units[k] = vector_from_json(v, d.underlying.level(k).ngens());
  });
  return d;
}

RingInput ring_from_json(const Json& raw, const GroupPtr& fallback) {
  const Json j = deref(raw);
  const std::string kind = kind_of(j);
  GroupPtr g = group_of(j, fallback);
  if (kind == "burnside_green") return {burnside_green(g), kind};
  if (kind == "fixed_point_green")
    return {fixed_point_green(g, j.contains("modulus") ? integer_from_json(j.at("modulus")) : Integer(0)), kind};
  if (kind == "k0_green") return {k0_green(g), kind};
  if (kind != "green") fail("unknown Green functor kind '" + kind + "'");
  GreenData d = green_data_from_json(j, g);
  return {green_from_levelwise(d.underlying, std::move(d.tables), std::move(d.units)), kind};
}

GreenFunctor green_from_json(const Json& j, const GroupPtr& fallback) { return ring_from_json(j, fallback).ring; }

Json green_to_json(const GreenFunctor& r) {
  const GroupPtr& g = r.group();
  Json tables = Json::object(), units = Json::object();
  for (int k = 0; k < static_cast<int>(g->class_count()); ++k) {
    tables[g->subgroup_class(k).label] = matrix_to_json(r.table(k));
    units[g->subgroup_class(k).label] = vector_to_json(r.unit(k));
  }
  Json m = mackey_to_json(r.underlying());
  m.erase("group");
  return {{"kind", "green"}, {"group", group_to_json(g)}, {"mackey", m}, {"tables", tables}, {"units", units}};
}

GreenModule module_from_json(const Json& raw, const RingInput* given) {
  const Json j = deref(raw);
  const std::string kind = kind_of(j);
  RingInput ring;
  if (given) {
    ring = *given;
  } else if (kind == "burnside_module") {
    ring = {burnside_green(group_of(j, nullptr)), "burnside_green"};
  } else {
    ring = ring_from_json(field(j, "ring"), j.contains("group") ? group_from_json(j.at("group")) : nullptr);
  }
  const GreenFunctor& r = ring.ring;
  const GroupPtr& g = r.group();
  if (j.contains("group") && group_from_json(j.at("group")) != g) fail("module and ring live over different groups");
  if (kind == "regular") return regular_module(r);
  if (kind == "free") {
    std::vector<int> orbits;
    for (const auto& l : field(j, "orbits")) orbits.push_back(class_index(g, l));
    return free_module(r, orbits).module;
  }
  if (kind == "module") {
    MackeyFunctor m = mackey_from_json(field(j, "mackey"), {Validation::kStructural, 0, 1}, g);
    std::vector<Matrix> tables(g->class_count());
    for_each_level(g, field(j, "tables"), "tables", [&](int k, const Json& v) {
      const std::size_t nm = m.level(k).ngens();
      tables[k] = matrix_from_json(v, nm, r.underlying().level(k).ngens() * nm);
    });
    return module_from_levelwise(r, m, std::move(tables));
  }
  // anything else is a plain Mackey functor
  const Json& mj = (kind == "burnside_module" || kind == "scalar") ? field(j, "mackey") : j;
  MackeyFunctor m = mackey_from_json(mj, {Validation::kStructural, 0, 1}, g);
  if (kind == "scalar" || (kind != "burnside_module" && ring.kind == "fixed_point_green")) return scalar_module(r, m);
  if (ring.kind == "burnside_green") return burnside_module(r, m);
  fail("a plain Mackey functor is a module over the Burnside or a fixed-point ring only; give a module file");
}

Json module_to_json(const GreenModule& m) {
  const GroupPtr& g = m.underlying().group();
  Json tables = Json::object();
  for (int k = 0; k < static_cast<int>(g->class_count()); ++k) tables[g->subgroup_class(k).label] = matrix_to_json(m.table(k));
  Json ring = green_to_json(m.ring());
  ring.erase("group");
  Json mj = mackey_to_json(m.underlying());
  mj.erase("group");
  return {{"kind", "module"}, {"group", group_to_json(g)}, {"ring", ring}, {"mackey", mj}, {"tables", tables}};
}

FilteredComplex filtered_complex_from_json(const Json& raw) {
  const Json j = deref(raw);
  const std::string kind = kind_of(j);
  GroupPtr g = group_of(j, nullptr);
  if (kind == "tor_skeletal") {
    RingInput ring = ring_from_json(field(j, "ring"), g);
    GreenModule m = module_from_json(field(j, "left"), &ring);
    GreenModule n = module_from_json(field(j, "right"), &ring);
    const int pmax = j.contains("pmax") ? int_from_json(j.at("pmax")) : 2;
    if (pmax < 0) fail("pmax must be non-negative");
    return skeletal_filtration(tor(m, n, pmax).complex);
  }
  if (kind != "filtered_complex") fail("unknown complex kind '" + kind + "'");
  FilteredComplex f;
  for (const auto& s : field(j, "summands"))
    f.summands.push_back({int_from_json(field(s, "degree")), int_from_json(field(s, "weight")),
                          mackey_from_json(field(s, "mackey"), {Validation::kStructural, 0, 1}, g)});
  if (j.contains("blocks"))
    for (const auto& b : j.at("blocks")) {
      const int from = int_from_json(field(b, "from")), to = int_from_json(field(b, "to"));
      if (from < 0 || to < 0 || from >= static_cast<int>(f.summands.size()) || to >= static_cast<int>(f.summands.size()))
        fail("block summand index out of range: " + describe(b));
      const MackeyFunctor& src = f.summands[from].object;
      const MackeyFunctor& tgt = f.summands[to].object;
      f.blocks.push_back({static_cast<std::size_t>(from), static_cast<std::size_t>(to),
                          MackeyMorphism(src, tgt, components_from_json(field(b, "components"), src, tgt))});
    }
  return f;
}

Json filtered_complex_to_json(const FilteredComplex& f) {
  if (f.summands.empty()) fail("cannot write an empty complex without a group");
  const GroupPtr& g = f.summands[0].object.group();
  Json summands = Json::array(), blocks = Json::array();
  for (const auto& s : f.summands) {
    Json m = mackey_to_json(s.object);
    m.erase("group");
    summands.push_back({{"degree", s.degree}, {"weight", s.weight}, {"mackey", m}});
  }
  for (const auto& b : f.blocks) blocks.push_back({{"from", b.from}, {"to", b.to}, {"components", morphism_to_json(b.map)}});
  return {{"kind", "filtered_complex"}, {"group", group_to_json(g)}, {"summands", summands}, {"blocks", blocks}};
}

}  // namespace mackeykit
