#include <unistd.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mackeykit/mackeykit.hpp"

using namespace mackeykit;

namespace {

struct Context {
  std::string format = "text";
  std::uint64_t seed = 1;
  std::string group;
  int pmax = 2;
  int rmax = 4;
  std::string out;
  bool color = false;
};

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct Report {
  Json json = Json::object();
  std::ostringstream text;
  std::vector<Check> checks;
  int status = 0;

  void check(std::string name, const std::optional<std::string>& failure) {
    checks.push_back({std::move(name), !failure, failure.value_or("")});
  }
};

std::string style(const Context& c, const std::string& s, const char* code) {
  return c.color ? std::string("\033[") + code + "m" + s + "\033[0m" : s;
}

// Column-aligned text table.
class Table {
 public:
  explicit Table(std::vector<std::string> headers) : rows_{std::move(headers)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& os, const Context& c, const std::string& indent = "  ") const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    for (std::size_t ri = 0; ri < rows_.size(); ++ri) {
      std::string line = indent;
      for (std::size_t i = 0; i < rows_[ri].size(); ++i) {
        std::string cell = rows_[ri][i];
        if (i + 1 < rows_[ri].size()) cell += std::string(width[i] - cell.size() + 2, ' ');
        line += cell;
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      os << (ri == 0 ? style(c, line, "1") : line) << "\n";
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string str(const Integer& v) { return v.get_str(); }

std::vector<std::string> class_labels(const GroupPtr& g) {
  std::vector<std::string> out;
  for (const auto& c : g->classes()) out.push_back(c.label);
  return out;
}

void print_matrix(std::ostream& os, const Context& c, const Matrix& m, const std::vector<std::string>& row_names,
                  const std::vector<std::string>& col_names, const std::string& corner) {
  std::vector<std::string> head{corner};
  head.insert(head.end(), col_names.begin(), col_names.end());
  Table t(head);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<std::string> row{row_names[r]};
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(str(m(r, k)));
    t.add(row);
  }
  t.print(os, c);
}

std::string plain_matrix(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return "(" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")";
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    s += r ? "; " : "";
    for (std::size_t k = 0; k < m.cols(); ++k) s += (k ? " " : "") + str(m(r, k));
  }
  return s + "]";
}

void print_levels(std::ostream& os, const Context& c, const MackeyFunctor& m) {
  Table t({"level", "rank", "group"});
  const GroupPtr& g = m.group();
  for (int k = 0; k < static_cast<int>(g->class_count()); ++k)
    t.add({g->subgroup_class(k).label, std::to_string(m.level(k).ngens()), m.level(k).to_string()});
  t.print(os, c);
}

Json ranks_json(const MackeyFunctor& m) {
  Json out = Json::object();
  for (int k = 0; k < static_cast<int>(m.level_count()); ++k)
    out[m.group()->subgroup_class(k).label] = m.level(k).ngens();
  return out;
}

std::optional<std::string> guarded(const std::function<std::optional<std::string>()>& fn) {
  try {
    return fn();
  } catch (const VerificationError& e) {
    return std::string(e.what());
  } catch (const std::domain_error& e) {
    return std::string(e.what());
  }
}

Json load(const std::string& path) { return load_json_file(path); }

GroupPtr required_group(const Context& c) {
  if (c.group.empty()) throw InputError("--group is required");
  return resolve_group(c.group);
}

// ---------------------------------------------------------------- commands

void group_info(const Context& c, Report& r) {
  GroupPtr g = required_group(c);
  Json classes = Json::array();
  Table t({"#", "label", "order", "conjugates", "normalizer", "weyl", "elements"});
  for (int k = 0; k < static_cast<int>(g->class_count()); ++k) {
    const auto& sc = g->subgroup_class(k);
    Json elems = Json::array();
    std::string es;
    for (Element e : members(sc.representative)) {
      elems.push_back(e);
      es += (es.empty() ? "" : ",") + std::to_string(e);
    }
    classes.push_back({{"label", sc.label},
                       {"order", sc.order},
                       {"conjugates", sc.conjugates.size()},
                       {"normalizer_order", popcount(sc.normalizer)},
                       {"weyl_order", sc.weyl_order},
                       {"representative", elems}});
    t.add({std::to_string(k), sc.label, std::to_string(sc.order), std::to_string(sc.conjugates.size()),
           std::to_string(popcount(sc.normalizer)), std::to_string(sc.weyl_order), "{" + es + "}"});
  }
  Json maps = Json::array();
  for (const OrbitMap& m : g->generating_maps())
    maps.push_back({{"source", g->subgroup_class(m.source).label},
                    {"target", g->subgroup_class(m.target).label},
                    {"point", m.point}});
  r.json["group"] = group_to_json(g);
  r.json["order"] = g->order();
  r.json["abelian"] = g->is_abelian();
  r.json["classes"] = classes;
  r.json["generating_maps"] = maps;
  r.text << "group " << (g->name().empty() ? "(unnamed)" : g->name()) << ", order " << g->order()
         << (g->is_abelian() ? ", abelian" : ", non-abelian") << "\n\nsubgroup classes\n";
  t.print(r.text, c);
  r.text << "\ngenerating orbit maps: " << maps.size() << "\n";
}

void marks(const Context& c, Report& r) {
  GroupPtr g = required_group(c);
  Matrix m = table_of_marks(*g);
  r.json["marks"] = matrix_to_json(m);
  auto labels = class_labels(g);
  std::vector<std::string> rows;
  for (const auto& l : labels) rows.push_back("G/" + l);
  r.text << "table of marks |(G/H)^K| for " << g->name() << "\n";
  print_matrix(r.text, c, m, rows, labels, "H \\ K");
}

void burnside_ring_cmd(const Context& c, Report& r) {
  GroupPtr g = required_group(c);
  Matrix t = burnside_ring(g);
  auto labels = class_labels(g);
  const std::size_t n = labels.size();
  Json basis = Json::array();
  for (const auto& l : labels) basis.push_back("G/" + l);
  r.json["basis"] = basis;
  r.json["table"] = matrix_to_json(t);
  std::vector<std::string> head{"x"};
  for (const auto& l : labels) head.push_back("[G/" + l + "]");
  Table tab(head);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> row{"[G/" + labels[i] + "]"};
    for (std::size_t j = 0; j < n; ++j) {
      std::string cell;
      for (std::size_t k = 0; k < n; ++k) {
        const Integer& a = t(k, i * n + j);
        if (a == 0) continue;
        if (!cell.empty()) cell += " + ";
        cell += (a == 1 ? "" : str(a)) + "[G/" + labels[k] + "]";
      }
      row.push_back(cell.empty() ? "0" : cell);
    }
    tab.add(row);
  }
  r.text << "Burnside ring A(" << g->name() << ") on the orbit basis\n";
  tab.print(r.text, c);
}

Json code_json(const GroupPtr& g, const SpanCode& s, std::size_t ny) {
  return {{"class", g->subgroup_class(s.cls).label},
          {"point", s.point},
          {"pair", Json::array({s.point / static_cast<int>(ny), s.point % static_cast<int>(ny)})}};
}

void hom_basis_cmd(const Context& c, Report& r, const std::string& xs, const std::string& ys) {
  GroupPtr g = required_group(c);
  GSet x = resolve_gset(xs, g), y = resolve_gset(ys, g);
  auto basis = hom_basis(x, y);
  Json b = Json::array();
  Table t({"#", "middle", "point", "(x, y)"});
  for (std::size_t i = 0; i < basis.size(); ++i) {
    b.push_back(code_json(g, basis[i], y.size()));
    const int px = basis[i].point / static_cast<int>(y.size()), py = basis[i].point % static_cast<int>(y.size());
    t.add({std::to_string(i), "G/" + g->subgroup_class(basis[i].cls).label, std::to_string(basis[i].point),
           "(" + std::to_string(px) + ", " + std::to_string(py) + ")"});
  }
  r.json["source"] = gset_to_json(x);
  r.json["target"] = gset_to_json(y);
  r.json["rank"] = basis.size();
  r.json["basis"] = b;
  r.text << "transitive spans " << xs << " -> " << ys << " over " << g->name() << ": rank " << basis.size() << "\n";
  t.print(r.text, c);
}

void print_span(std::ostream& os, const Context& c, const BurnsideElement& e) {
  const GroupPtr& g = e.source().group();
  Table t({"coefficient", "middle", "point"});
  for (const auto& [code, a] : e.terms()) t.add({str(a), "G/" + g->subgroup_class(code.cls).label, std::to_string(code.point)});
  if (e.is_zero())
    os << "  0\n";
  else
    t.print(os, c);
}

void compose_cmd(const Context& c, Report& r, const std::string& second, const std::string& first) {
  GroupPtr fallback = c.group.empty() ? nullptr : resolve_group(c.group);
  BurnsideElement s2 = span_from_json(load(second), fallback);
  BurnsideElement s1 = span_from_json(load(first), fallback);
  if (s1.target() != s2.source()) throw InputError("compose: the target of the first span is not the source of the second");
  BurnsideElement e = compose(s2, s1);
  r.json["composite"] = span_to_json(e);
  r.text << "composite " << second << " o " << first << "\n";
  print_span(r.text, c, e);
}

void finish_checks(const Context& c, Report& r) {
  Json arr = Json::array();
  bool ok = true;
  for (const auto& ch : r.checks) {
    Json e = {{"name", ch.name}, {"ok", ch.ok}};
    if (!ch.ok) e["detail"] = ch.detail;
    arr.push_back(e);
    ok = ok && ch.ok;
    r.text << (ch.ok ? style(c, "PASS", "32") : style(c, "FAIL", "31")) << "  " << ch.name;
    if (!ch.ok) r.text << ": " << ch.detail;
    r.text << "\n";
  }
  r.json["checks"] = arr;
  r.json["ok"] = ok;
  if (!ok) r.status = 1;
}

void mackey_check(const Context& c, Report& r, const std::string& path) {
  GroupPtr fallback = c.group.empty() ? nullptr : resolve_group(c.group);
  MackeyFunctor m = mackey_from_json(load(path), {Validation::kNone, 0, c.seed}, fallback);
  r.json["levels"] = mackey_levels_json(m);
  r.json["ranks"] = ranks_json(m);
  r.text << "levels\n";
  print_levels(r.text, c, m);
  r.text << "\n";
  auto structural = guarded([&] { return validation_failure(m, {Validation::kStructural, 0, c.seed}); });
  r.check("structural axioms", structural);
  if (!structural) {
    r.check("random span pairs (seed " + std::to_string(c.seed) + ")",
            guarded([&] { return validation_failure(m, {Validation::kFull, 200, c.seed}); }));
    std::optional<std::string> dc;
    const int n = static_cast<int>(m.group()->class_count());
    for (int a = 0; a < n && !dc; ++a)
      for (int b = 0; b < n && !dc; ++b) dc = guarded([&] { return double_coset_failure(m, a, b); });
    r.check("double coset formula", dc);
  }
  finish_checks(c, r);
  if (r.status == 0) r.json["functor"] = mackey_to_json(m);
}

void box_cmd(const Context& c, Report& r, const std::string& mp, const std::string& np) {
  GroupPtr fallback = c.group.empty() ? nullptr : resolve_group(c.group);
  MackeyFunctor m = mackey_from_json(load(mp), {Validation::kStructural, 0, 1}, fallback);
  MackeyFunctor n = mackey_from_json(load(np), {Validation::kStructural, 0, 1}, m.group());
  if (m.group() != n.group()) throw InputError("box: the two functors live over different groups");
  BoxProduct b(m, n);
  const MackeyFunctor& mn = b.object();
  Json raw = Json::object();
  for (int k = 0; k < static_cast<int>(mn.level_count()); ++k) raw[m.group()->subgroup_class(k).label] = b.raw_size(k);
  r.json["levels"] = mackey_levels_json(mn);
  r.json["ranks"] = ranks_json(mn);
  r.json["raw_generators"] = raw;
  r.text << "M box N\n";
  print_levels(r.text, c, mn);
  r.text << "\n";
  r.check("Mackey axioms", guarded([&] { return validation_failure(mn, {Validation::kFull, 200, c.seed}); }));
  r.check("symmetry M box N = N box M", guarded([&]() -> std::optional<std::string> {
            box_comm_iso(b, BoxProduct(n, m));
            return std::nullopt;
          }));
  r.check("(M box N)(G/e) = M(G/e) (x) N(G/e)", guarded([&]() -> std::optional<std::string> {
            FreeOrbitMonoidal f = free_orbit_monoidal(b);
            if (!f.is_iso) return "not an isomorphism";
            if (!f.equivariant) return "not equivariant";
            return std::nullopt;
          }));
  finish_checks(c, r);
  r.json["functor"] = mackey_to_json(mn);
}

std::string axiom_of(const std::string& msg) {
  for (const char* a : {"commutativity", "unit law", "associativity", "Frobenius", "torsion", "shape"})
    if (msg.find(a) != std::string::npos) return a;
  if (msg.find("preserve the unit") != std::string::npos) return "unital restriction";
  if (msg.find("multiplicative") != std::string::npos) return "multiplicative restriction";
  return "other";
}

void green_check(const Context& c, Report& r, const std::string& path) {
  GroupPtr fallback = c.group.empty() ? nullptr : resolve_group(c.group);
  GreenData d = green_data_from_json(load(path), fallback);
  r.json["levels"] = mackey_levels_json(d.underlying);
  r.text << "levels\n";
  print_levels(r.text, c, d.underlying);
  r.text << "\n";
  r.check("Mackey axioms", guarded([&] { return validation_failure(d.underlying, {Validation::kFull, 200, c.seed}); }));
  auto gf = guarded([&] { return green_failure(d.underlying, d.tables, d.units); });
  r.check("Green functor axioms", gf);
  if (gf) r.json["counterexample"] = {{"axiom", axiom_of(*gf)}, {"message", *gf}};
  finish_checks(c, r);
  if (r.status == 0) r.json["functor"] = green_to_json(green_from_levelwise(d.underlying, d.tables, d.units));
}

void levels_table_rows(Table& t, const std::string& key, const MackeyFunctor* m, std::size_t nlev) {
  std::vector<std::string> row{key};
  for (std::size_t k = 0; k < nlev; ++k) row.push_back(m ? m->level(static_cast<int>(k)).to_string() : "0");
  t.add(row);
}

void tor_cmd(const Context& c, Report& r, const std::string& rp, const std::string& mp, const std::string& np) {
  if (c.pmax < 0) throw InputError("--pmax must be non-negative");
  GroupPtr fallback = c.group.empty() ? nullptr : resolve_group(c.group);
  RingInput ring = ring_from_json(load(rp), fallback);
  GreenModule m = module_from_json(load(mp), &ring);
  GreenModule n = module_from_json(load(np), &ring);
  TorResult t = tor(m, n, c.pmax);
  const GroupPtr& g = ring.ring.group();
  auto labels = class_labels(g);
  Json res = Json::array();
  for (std::size_t p = 0; p < t.resolution.modules.size(); ++p) {
    Json gens = Json::array();
    for (int k : t.resolution.modules[p].generators) gens.push_back(labels[k]);
    res.push_back({{"p", p}, {"generators", gens}});
  }
  Json groups = Json::array();
  std::vector<std::string> head{"(p, q)"};
  for (const auto& l : labels) head.push_back(l);
  Table tab(head);
  for (int p = 0; p <= c.pmax; ++p) {
    groups.push_back({{"p", p}, {"q", 0}, {"levels", mackey_levels_json(t.groups[p])}});
    levels_table_rows(tab, "(" + std::to_string(p) + ", 0)", &t.groups[p], labels.size());
  }
  r.json["pmax"] = c.pmax;
  r.json["resolution"] = res;
  r.json["resolution_finite"] = t.resolution.finite;
  r.json["tor"] = groups;
  r.text << "Tor_p(M, N)_q over the ring (q = 0)\n";
  tab.print(r.text, c);
  r.text << "\nresolution generators:";
  for (std::size_t p = 0; p < t.resolution.modules.size(); ++p)
    r.text << " P_" << p << "=" << t.resolution.modules[p].generators.size();
  r.text << (t.resolution.finite ? " (finite)" : "") << "\n\n";
  r.check("resolution exact", guarded([&] { return resolution_failure(t.resolution); }));
  r.check("Tor_0 = M box_R N (witness)", guarded([&]() -> std::optional<std::string> {
            tor0_witness(t, m, rel_box(m, n));
            return std::nullopt;
          }));
  finish_checks(c, r);
}

void ss_cmd(const Context& c, Report& r, const std::string& path) {
  if (c.rmax < 1) throw InputError("--rmax must be at least 1");
  FilteredComplex f = filtered_complex_from_json(load(path));
  if (auto fail = filtered_complex_failure(f)) throw VerificationError("not a filtered complex: " + *fail);
  if (f.summands.empty()) throw InputError("ss: the complex has no summands");
  auto pages = ss_pages(f, c.rmax);
  const GroupPtr& g = f.summands[0].object.group();
  auto labels = class_labels(g);
  std::vector<std::string> head{"(p, q)"};
  for (const auto& l : labels) head.push_back(l);
  Json pj = Json::array();
  for (const auto& page : pages) {
    Json entries = Json::array(), diffs = Json::array();
    Table tab(head);
    std::vector<const PageEntry*> sorted;
    for (const auto& e : page.entries) sorted.push_back(&e);
    std::sort(sorted.begin(), sorted.end(), [](const PageEntry* a, const PageEntry* b) {
      return std::make_pair(a->p, a->q) < std::make_pair(b->p, b->q);
    });
    for (const PageEntry* ep : sorted) {
      const PageEntry& e = *ep;
      entries.push_back({{"p", e.p}, {"q", e.q}, {"levels", mackey_levels_json(e.object)}});
      levels_table_rows(tab, "(" + std::to_string(e.p) + ", " + std::to_string(e.q) + ")", &e.object, labels.size());
    }
    std::string nonzero;
    for (const auto& d : page.differentials) {
      diffs.push_back({{"p", d.p}, {"q", d.q}, {"zero", d.map.is_zero()}});
      if (!d.map.is_zero()) nonzero += " (" + std::to_string(d.p) + ", " + std::to_string(d.q) + ")";
    }
    pj.push_back({{"r", page.r}, {"entries", entries}, {"differentials", diffs}});
    r.text << "E_" << page.r << "\n";
    tab.print(r.text, c);
    r.text << "  nonzero d_" << page.r << " from:" << (nonzero.empty() ? " none" : nonzero) << "\n\n";
  }
  Json gr = Json::array();
  for (const auto& e : associated_graded(f)) gr.push_back({{"p", e.p}, {"q", e.q}, {"levels", mackey_levels_json(e.object)}});
  r.json["rmax"] = c.rmax;
  r.json["stable_page"] = stable_page(f);
  r.json["pages"] = pj;
  r.json["associated_graded"] = gr;
  r.check("d_r d_r = 0 and E_{r+1} = H(E_r)", guarded([&] { return page_consistency_failure(pages); }));
  r.check("stable page = associated graded of H_*", guarded([&] { return convergence_failure(f); }));
  finish_checks(c, r);
}

void bpq_cmd(const Context& c, Report& r) {
  GroupPtr g = required_group(c);
  BpqResult b = bpq_verify(g);
  r.json["group"] = group_to_json(g);
  r.json["k0"] = green_to_json(b.k0);
  r.json["burnside"] = green_to_json(b.burnside);
  r.json["iso"] = morphism_to_json(b.iso.forward);
  r.json["inverse"] = morphism_to_json(b.iso.inverse);
  r.json["ok"] = true;
  r.text << "K_0 of G-sets over G/H\n";
  print_levels(r.text, c, b.k0.underlying());
  r.text << "\nBurnside Green functor\n";
  print_levels(r.text, c, b.burnside.underlying());
  r.text << "\nisomorphism K_0 -> A\n";
  Table t({"level", "iso", "inverse"});
  for (int k = 0; k < static_cast<int>(g->class_count()); ++k)
    t.add({g->subgroup_class(k).label, plain_matrix(b.iso.forward.at(k)), plain_matrix(b.iso.inverse.at(k))});
  t.print(r.text, c);
  r.text << style(c, "PASS", "32") << "  Green functor isomorphism\n";
}

void duality_check(const Context& c, Report& r, const std::vector<std::string>& sets) {
  GroupPtr g = required_group(c);
  std::vector<std::pair<std::string, GSet>> xs;
  if (sets.empty())
    for (int k = 0; k < static_cast<int>(g->class_count()); ++k)
      xs.emplace_back("G/" + g->subgroup_class(k).label, GSet::orbit(g, k));
  for (const auto& s : sets) xs.emplace_back(s, resolve_gset(s, g));
  for (const auto& [name, x] : xs)
    r.check("triangle identity on " + name, guarded([&]() -> std::optional<std::string> {
              BurnsideElement t = triangle_composite(x);
              if (t == BurnsideElement::identity(x)) return std::nullopt;
              return "composite is " + t.to_string();
            }));
  finish_checks(c, r);
}

void promonoidal_cmd(const Context& c, Report& r, int max_feet) {
  if (max_feet < 0 || max_feet > 3) throw InputError("--max-feet must be between 0 and 3");
  GroupPtr g = required_group(c);
  PromonoidalSweep sweep = promonoidal_sweep(g, max_feet);
  Json failures = Json::array();
  for (const auto& f : sweep.failures) {
    Json j{{"kind", f.kind}, {"feet", f.feet}, {"targets", f.targets}};
    if (f.kind == "coend") {
      j["blocks"] = f.block;
      j["block_count"] = f.block_count;
    } else {
      j["cut"] = f.block.at(0);
    }
    failures.push_back(j);
  }
  r.json["max_feet"] = max_feet;
  r.json["coend_cases"] = sweep.coend_cases;
  r.json["product_cases"] = sweep.product_cases;
  r.json["failures"] = failures;
  r.text << "coend comparisons: " << sweep.coend_cases << ", multimap product comparisons: " << sweep.product_cases << "\n";
  for (const auto& f : failures) r.text << "  failure " << f.dump() << "\n";
  r.check("coend pairing and multimap products", failures.empty() ? std::nullopt
                                                                  : std::optional<std::string>(std::to_string(failures.size()) + " failures"));
  finish_checks(c, r);
}

void emit(const Context& c, const std::string& s) {
  if (c.out.empty()) {
    std::cout << s;
    std::cout.flush();
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw InputError("cannot write '" + c.out + "'");
  f << s;
}

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  CLI::App app{"Exact computations with Mackey functors, Green functors and the Burnside category of a finite group"};
  app.require_subcommand(1);
  app.fallthrough();
  auto common = [&](CLI::App* sub, bool group) {
    sub->add_option("--format", ctx.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", ctx.seed, "Seed for randomized checks");
    sub->add_option("--out", ctx.out, "Write output to a file instead of stdout");
    if (group)
      sub->add_option_function<std::string>(
          "--group", [&](const std::string& s) { ctx.group = s; },
          "Built-in group name or group JSON file");
  };
  std::string a1, a2, a3;
  std::vector<std::string> many;
  int max_feet = 2;

  auto* group_info_cmd = app.add_subcommand("group-info", "Subgroup classes and generating orbit maps");
  common(group_info_cmd, true);
  auto* marks_cmd = app.add_subcommand("marks", "Table of marks");
  common(marks_cmd, true);
  auto* ring_cmd = app.add_subcommand("burnside-ring", "Multiplication table of the Burnside ring");
  common(ring_cmd, true);
  auto* hom_cmd = app.add_subcommand("hom-basis", "Transitive spans X -> Y");
  common(hom_cmd, true);
  hom_cmd->add_option("source", a1, "G-set: pt, a subgroup-class label or a JSON file")->required();
  hom_cmd->add_option("target", a2, "G-set")->required();
  auto* compose_sub = app.add_subcommand("compose", "Composite G o F of two span files");
  common(compose_sub, true);
  compose_sub->add_option("second", a1, "Span file G")->required();
  compose_sub->add_option("first", a2, "Span file F")->required();
  auto* mackey_sub = app.add_subcommand("mackey-check", "Validate a Mackey functor file");
  common(mackey_sub, true);
  mackey_sub->add_option("functor", a1, "Mackey functor JSON")->required();
  auto* box_sub = app.add_subcommand("box", "Box product of two Mackey functors");
  common(box_sub, true);
  box_sub->add_option("left", a1, "Mackey functor JSON")->required();
  box_sub->add_option("right", a2, "Mackey functor JSON")->required();
  auto* green_sub = app.add_subcommand("green-check", "Validate a Green functor file");
  common(green_sub, true);
  green_sub->add_option("functor", a1, "Green functor JSON")->required();
  auto* tor_sub = app.add_subcommand("tor", "Tor over a Green functor");
  common(tor_sub, true);
  tor_sub->add_option("ring", a1, "Green functor JSON")->required();
  tor_sub->add_option("left", a2, "Module JSON")->required();
  tor_sub->add_option("right", a3, "Module JSON")->required();
  tor_sub->add_option("--pmax", ctx.pmax, "Highest Tor degree");
  auto* ss_sub = app.add_subcommand("ss", "Spectral sequence of a filtered complex");
  common(ss_sub, false);
  ss_sub->add_option("complex", a1, "Filtered complex JSON")->required();
  ss_sub->add_option("--rmax", ctx.rmax, "Last page");
  auto* bpq_sub = app.add_subcommand("bpq", "K_0 of finite G-sets against the Burnside Green functor");
  common(bpq_sub, true);
  auto* dual_sub = app.add_subcommand("duality-check", "Triangle identity for the self-duality of G-sets");
  common(dual_sub, true);
  dual_sub->add_option("sets", many, "G-sets (default: every orbit)");
  auto* pro_sub = app.add_subcommand("promonoidal-check", "Coend condition on multimaps, exhaustively");
  common(pro_sub, true);
  pro_sub->add_option("--max-feet", max_feet, "Largest number of feet");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  const char* nc = std::getenv("MACKEYKIT_NO_COLOR");
  ctx.color = ctx.format == "text" && ctx.out.empty() && !(nc && *nc) && isatty(STDOUT_FILENO);

  Report r;
  std::string error;
  int status = 0;
  try {
    if (group_info_cmd->parsed()) group_info(ctx, r);
    else if (marks_cmd->parsed()) marks(ctx, r);
    else if (ring_cmd->parsed()) burnside_ring_cmd(ctx, r);
    else if (hom_cmd->parsed()) hom_basis_cmd(ctx, r, a1, a2);
    else if (compose_sub->parsed()) compose_cmd(ctx, r, a1, a2);
    else if (mackey_sub->parsed()) mackey_check(ctx, r, a1);
    else if (box_sub->parsed()) box_cmd(ctx, r, a1, a2);
    else if (green_sub->parsed()) green_check(ctx, r, a1);
    else if (tor_sub->parsed()) tor_cmd(ctx, r, a1, a2, a3);
    else if (ss_sub->parsed()) ss_cmd(ctx, r, a1);
    else if (bpq_sub->parsed()) bpq_cmd(ctx, r);
    else if (dual_sub->parsed()) duality_check(ctx, r, many);
    else if (pro_sub->parsed()) promonoidal_cmd(ctx, r, max_feet);
    status = r.status;
  } catch (const VerificationError& e) {
    error = e.what();
    status = 1;
  } catch (const InputError& e) {
    error = e.what();
    status = 2;
  } catch (const std::invalid_argument& e) {
    error = e.what();
    status = 2;
  } catch (const Json::exception& e) {
    error = e.what();
    status = 2;
  } catch (const std::exception& e) {
    error = e.what();
    status = 1;
  }

  try {
    if (ctx.format == "json") {
      Json out = {{"schema_version", 1}};
      if (error.empty()) {
        out.update(r.json);
      } else {
        out["ok"] = false;
        out["error"] = error;
      }
      emit(ctx, out.dump() + "\n");
    } else if (error.empty()) {
      emit(ctx, r.text.str());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (!error.empty()) std::cerr << "error: " << error << "\n";
  return status;
}
