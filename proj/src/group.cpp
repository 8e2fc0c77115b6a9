#include "mackeykit/group.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mackeykit {

int popcount(Subset s) { return std::popcount(s); }

std::vector<Element> members(Subset s) {
  std::vector<Element> out;
  for (Element g = 0; s; ++g, s >>= 1)
    if (s & 1u) out.push_back(g);
  return out;
}

namespace {

bool lex_less(Subset a, Subset b) { return members(a) < members(b); }

std::vector<std::vector<int>> cyclic_table(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

// Quaternion units 1, -1, i, -i, j, -j, k, -k.
std::vector<std::vector<int>> quaternion_table() {
  // unit index u in {0:1, 1:i, 2:j, 3:k}; element = 2 * u + sign
  static const int prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ua = a / 2, ub = b / 2;
      int s = (a % 2) ^ (b % 2) ^ sign[ua][ub];
      t[a][b] = 2 * prod[ua][ub] + s;
    }
  return t;
}

std::vector<int> rotation(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return p;
}

std::vector<int> reflection(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = (n - i) % n;
  return p;
}

}  // namespace

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<int>>& table, std::string name) {
  const std::size_t n = table.size();
  if (n == 0) throw std::invalid_argument("group table is empty");
  if (n > kMaxGroupOrder) throw std::invalid_argument("group order exceeds the supported maximum of 64");
  for (const auto& row : table) {
    if (row.size() != n) throw std::invalid_argument("group table is not square");
    for (int v : row)
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw std::invalid_argument("group table entry out of range");
  }
  int e = -1;
  for (std::size_t a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (std::size_t b = 0; b < n && ok; ++b)
      ok = table[a][b] == static_cast<int>(b) && table[b][a] == static_cast<int>(b);
    if (ok) e = static_cast<int>(a);
  }
  if (e < 0) throw std::invalid_argument("group table has no identity element");
  // relabel so that the identity is 0
  std::vector<int> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  std::swap(perm[0], perm[e]);
  std::vector<int> flat(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) flat[perm[a] * n + perm[b]] = perm[table[a][b]];
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->build(std::move(flat), std::move(name));
  return g;
}

GroupPtr FiniteGroup::from_permutations(int degree, const std::vector<std::vector<int>>& generators, std::string name) {
  if (degree < 1) throw std::invalid_argument("permutation degree must be positive");
  bool one_based = !generators.empty();
  for (const auto& p : generators) {
    if (static_cast<int>(p.size()) != degree) throw std::invalid_argument("permutation has wrong length");
    for (int v : p)
      if (v == 0) one_based = false;
  }
  std::vector<std::vector<int>> gens;
  for (const auto& p : generators) {
    std::vector<int> q(p);
    if (one_based)
      for (int& v : q) --v;
    std::vector<bool> seen(degree, false);
    for (int v : q) {
      if (v < 0 || v >= degree || seen[v]) throw std::invalid_argument("generator is not a permutation");
      seen[v] = true;
    }
    gens.push_back(std::move(q));
  }
  std::vector<int> id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;
  std::set<std::vector<int>> elems{id};
  std::queue<std::vector<int>> todo;
  todo.push(id);
  while (!todo.empty()) {
    auto p = todo.front();
    todo.pop();
    for (const auto& s : gens) {
      std::vector<int> q(degree);
      for (int i = 0; i < degree; ++i) q[i] = s[p[i]];
      if (elems.insert(q).second) {
        if (elems.size() > kMaxGroupOrder) throw std::invalid_argument("generated group exceeds order 64");
        todo.push(std::move(q));
      }
    }
  }
  std::vector<std::vector<int>> list(elems.begin(), elems.end());  // lexicographic; identity first
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < list.size(); ++i) index[list[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> table(list.size(), std::vector<int>(list.size()));
  for (std::size_t a = 0; a < list.size(); ++a)
    for (std::size_t b = 0; b < list.size(); ++b) {
      std::vector<int> c(degree);
      for (int i = 0; i < degree; ++i) c[i] = list[a][list[b][i]];  // a after b
      table[a][b] = index.at(c);
    }
  return from_table(table, std::move(name));
}

std::vector<std::string> FiniteGroup::named_groups() {
  return {"trivial", "C2", "C3", "C4", "C2xC2", "S3", "C6", "D4", "Q8"};
}

GroupPtr FiniteGroup::named(const std::string& name) {
  if (name == "trivial" || name == "C1") return from_table({{0}}, "trivial");
  if (name == "C2xC2") {
    std::vector<std::vector<int>> t(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
    return from_table(t, name);
  }
  if (name == "S3") return from_permutations(3, {{1, 0, 2}, {1, 2, 0}}, name);
  if (name == "Q8") return from_table(quaternion_table(), name);
  if (name == "A4") return from_permutations(4, {{1, 2, 0, 3}, {1, 0, 3, 2}}, name);
  if (name.size() >= 2 && (name[0] == 'C' || name[0] == 'D') &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    int n = std::stoi(name.substr(1));
    if (name[0] == 'C' && n >= 1 && n <= static_cast<int>(kMaxGroupOrder)) return from_table(cyclic_table(n), name);
    // D_n is the dihedral group of order 2n
    if (name[0] == 'D' && n >= 3 && 2 * n <= static_cast<int>(kMaxGroupOrder))
      return from_permutations(n, {rotation(n), reflection(n)}, name);
  }
  throw std::invalid_argument("unknown group name '" + name + "'");
}

void FiniteGroup::build(std::vector<int> table, std::string name) {
  order_ = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(table.size()))));
  table_ = std::move(table);
  name_ = std::move(name);
  const std::size_t n = order_;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (mul(mul(static_cast<Element>(a), static_cast<Element>(b)), static_cast<Element>(c)) !=
            mul(static_cast<Element>(a), mul(static_cast<Element>(b), static_cast<Element>(c))))
          throw std::invalid_argument("group table is not associative");
  inverse_.assign(n, -1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (mul(static_cast<Element>(a), static_cast<Element>(b)) == 0 &&
          mul(static_cast<Element>(b), static_cast<Element>(a)) == 0)
        inverse_[a] = static_cast<int>(b);
  for (int v : inverse_)
    if (v < 0) throw std::invalid_argument("group table has an element without inverse");
  // Latin square property follows from associativity plus inverses.
  if (name_.empty()) name_ = "G" + std::to_string(n);
  enumerate_subgroups();
  build_cosets_and_maps();
}

std::size_t FiniteGroup::element_order(Element g) const {
  std::size_t k = 1;
  for (Element x = g; x != 0; x = mul(x, g)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (mul(static_cast<Element>(a), static_cast<Element>(b)) != mul(static_cast<Element>(b), static_cast<Element>(a)))
        return false;
  return true;
}

Subset FiniteGroup::all() const { return order_ == 64 ? ~Subset(0) : ((Subset(1) << order_) - 1); }

bool FiniteGroup::is_subgroup(Subset s) const {
  if (!contains(s, 0) || (s & ~all())) return false;
  for (Element a : members(s)) {
    if (!contains(s, inv(a))) return false;
    for (Element b : members(s))
      if (!contains(s, mul(a, b))) return false;
  }
  return true;
}

Subset FiniteGroup::closure(Subset s) const {
  Subset cur = s | 1u;
  for (;;) {
    Subset next = cur;
    for (Element a : members(cur))
      for (Element b : members(cur)) next |= Subset(1) << mul(a, b);
    if (next == cur) return cur;
    cur = next;
  }
}

Subset FiniteGroup::conjugate(Subset s, Element g) const {
  Subset out = 0;
  for (Element h : members(s)) out |= Subset(1) << conj(g, h);
  return out;
}

Subset FiniteGroup::normalizer(Subset s) const {
  Subset out = 0;
  for (Element g = 0; g < static_cast<Element>(order_); ++g)
    if (conjugate(s, g) == s) out |= Subset(1) << g;
  return out;
}

void FiniteGroup::enumerate_subgroups() {
  std::set<Subset> found;
  for (Element g = 0; g < static_cast<Element>(order_); ++g) found.insert(closure(Subset(1) << g));
  std::vector<Subset> frontier(found.begin(), found.end());
  const std::vector<Subset> cyclic = frontier;
  while (!frontier.empty()) {
    std::vector<Subset> next;
    for (Subset a : frontier)
      for (Subset c : cyclic) {
        if ((c & ~a) == 0) continue;
        Subset j = closure(a | c);
        if (found.insert(j).second) next.push_back(j);
      }
    frontier = std::move(next);
  }
  subgroups_.assign(found.begin(), found.end());
  std::sort(subgroups_.begin(), subgroups_.end(), [](Subset a, Subset b) {
    int pa = popcount(a), pb = popcount(b);
    if (pa != pb) return pa < pb;
    return lex_less(a, b);
  });

  // group into conjugacy classes; the first member met in sorted order is the
  // lexicographic minimum of its class
  subgroup_class_.assign(subgroups_.size(), -1);
  subgroup_conj_.assign(subgroups_.size(), 0);
  for (std::size_t i = 0; i < subgroups_.size(); ++i) {
    if (subgroup_class_[i] >= 0) continue;
    SubgroupClass cls;
    cls.representative = subgroups_[i];
    cls.order = static_cast<std::size_t>(popcount(subgroups_[i]));
    cls.normalizer = normalizer(subgroups_[i]);
    cls.weyl_order = static_cast<std::size_t>(popcount(cls.normalizer)) / cls.order;
    const int k = static_cast<int>(classes_.size());
    for (Element g = 0; g < static_cast<Element>(order_); ++g) {
      Subset c = conjugate(subgroups_[i], g);
      auto it = std::lower_bound(subgroups_.begin(), subgroups_.end(), c, [](Subset a, Subset b) {
        int pa = popcount(a), pb = popcount(b);
        if (pa != pb) return pa < pb;
        return lex_less(a, b);
      });
      std::size_t j = static_cast<std::size_t>(it - subgroups_.begin());
      if (subgroup_class_[j] < 0) {
        subgroup_class_[j] = k;
        // g^-1 C g = rep, so the conjugator for C is g^-1
        subgroup_conj_[j] = inv(g);
        cls.conjugates.push_back(c);
      }
    }
    std::sort(cls.conjugates.begin(), cls.conjugates.end(), lex_less);
    classes_.push_back(std::move(cls));
  }

  std::map<std::string, std::vector<int>> by_label;
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    classes_[k].label = subgroup_label(classes_[k].representative);
    by_label[classes_[k].label].push_back(static_cast<int>(k));
  }
  for (auto& [label, ks] : by_label)
    if (ks.size() > 1)
      for (std::size_t i = 0; i < ks.size(); ++i) classes_[ks[i]].label += static_cast<char>('a' + i);
}

std::string FiniteGroup::subgroup_label(Subset s) const {
  const int n = popcount(s);
  if (n == 1) return "e";
  std::vector<Element> m = members(s);
  std::size_t involutions = 0;
  bool cyclic = false, abelian = true;
  std::size_t max_order = 1;
  for (Element a : m) {
    std::size_t o = element_order(a);
    max_order = std::max(max_order, o);
    if (o == 2) ++involutions;
    if (o == static_cast<std::size_t>(n)) cyclic = true;
    for (Element b : m)
      if (mul(a, b) != mul(b, a)) abelian = false;
  }
  if (cyclic) return "C" + std::to_string(n);
  if (n == 4) return "C2xC2";
  if (n == 6) return "S3";
  if (n == 8) {
    if (abelian) return involutions == 3 ? "C4xC2" : "C2xC2xC2";
    return involutions == 5 ? "D4" : "Q8";
  }
  if (n == 12) {
    if (abelian) return "C6xC2";
    if (involutions == 3 && max_order == 3) return "A4";
    if (involutions == 7) return "D6";
    if (involutions == 1) return "Dic3";
  }
  return "H" + std::to_string(n);
}

namespace {
bool subgroup_less(Subset a, Subset b) {
  int pa = popcount(a), pb = popcount(b);
  if (pa != pb) return pa < pb;
  return lex_less(a, b);
}
}  // namespace

int FiniteGroup::class_of(Subset s) const {
  auto it = std::lower_bound(subgroups_.begin(), subgroups_.end(), s, subgroup_less);
  if (it == subgroups_.end() || *it != s) throw std::invalid_argument("subset is not a subgroup");
  return subgroup_class_[static_cast<std::size_t>(it - subgroups_.begin())];
}

Element FiniteGroup::conjugator(Subset s) const {
  auto it = std::lower_bound(subgroups_.begin(), subgroups_.end(), s, subgroup_less);
  if (it == subgroups_.end() || *it != s) throw std::invalid_argument("subset is not a subgroup");
  return subgroup_conj_[static_cast<std::size_t>(it - subgroups_.begin())];
}

int FiniteGroup::class_by_label(const std::string& label) const {
  for (std::size_t k = 0; k < classes_.size(); ++k)
    if (classes_[k].label == label) return static_cast<int>(k);
  if (label == "G" || label == name_) return top_class();
  throw std::invalid_argument("no subgroup class labelled '" + label + "'");
}

std::vector<Element> FiniteGroup::double_cosets(Subset h, Subset k) const {
  if (!is_subgroup(h) || !is_subgroup(k)) throw std::invalid_argument("double_cosets: input is not a subgroup");
  std::vector<Element> reps;
  Subset covered = 0;
  for (Element g = 0; g < static_cast<Element>(order_); ++g) {
    if (contains(covered, g)) continue;
    reps.push_back(g);
    covered |= double_coset(h, g, k);
  }
  return reps;
}

Subset FiniteGroup::double_coset(Subset h, Element g, Subset k) const {
  Subset out = 0;
  for (Element a : members(h))
    for (Element b : members(k)) out |= Subset(1) << mul(mul(a, g), b);
  return out;
}

void FiniteGroup::build_cosets_and_maps() {
  const std::size_t nc = classes_.size();
  cosets_.resize(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    CosetSpace& cs = cosets_[k];
    Subset h = classes_[k].representative;
    cs.label_of.assign(order_, -1);
    for (Element g = 0; g < static_cast<Element>(order_); ++g) {
      if (cs.label_of[g] >= 0) continue;
      int c = static_cast<int>(cs.rep.size());
      cs.rep.push_back(g);
      for (Element x : members(h)) cs.label_of[mul(g, x)] = c;
    }
    cs.size = cs.rep.size();
    cs.action.resize(order_ * cs.size);
    for (Element g = 0; g < static_cast<Element>(order_); ++g)
      for (std::size_t c = 0; c < cs.size; ++c)
        cs.action[static_cast<std::size_t>(g) * cs.size + c] = cs.label_of[mul(g, cs.rep[c])];
  }

  map_points_.assign(nc * nc, {});
  map_offset_.assign(nc * nc, 0);
  map_total_ = 0;
  for (std::size_t s = 0; s < nc; ++s)
    for (std::size_t t = 0; t < nc; ++t) {
      auto& pts = map_points_[s * nc + t];
      const CosetSpace& cs = cosets_[t];
      for (std::size_t c = 0; c < cs.size; ++c) {
        bool fixed = true;
        for (Element h : members(classes_[s].representative))
          if (cs.act(h, static_cast<int>(c)) != static_cast<int>(c)) {
            fixed = false;
            break;
          }
        if (fixed) pts.push_back(static_cast<int>(c));
      }
      map_offset_[s * nc + t] = map_total_;
      map_total_ += pts.size();
      for (int p : pts) all_maps_.push_back(OrbitMap{static_cast<int>(s), static_cast<int>(t), p});
    }

  // generating maps: maximal embeddings up to automorphisms, then automorphisms
  for (std::size_t s = 0; s < nc; ++s)
    for (std::size_t t = 0; t < nc; ++t) {
      if (s == t) continue;
      std::set<int> done;
      for (int p : map_points_[s * nc + t]) {
        if (done.count(p)) continue;
        Element a = cosets_[t].rep[p];
        Subset big = conjugate(classes_[t].representative, a);
        Subset small = classes_[s].representative;
        bool maximal = true;
        for (Subset m : subgroups_)
          if (m != small && m != big && (m & small) == small && (m & big) == m) {
            maximal = false;
            break;
          }
        for (Element n : members(classes_[s].normalizer))
          for (Element m : members(classes_[t].normalizer))
            done.insert(cosets_[t].label_of[mul(mul(n, a), m)]);
        if (maximal) generating_.push_back(OrbitMap{static_cast<int>(s), static_cast<int>(t), p});
      }
    }
  for (std::size_t k = 0; k < nc; ++k)
    for (int p : map_points_[k * nc + k])
      if (p != 0) generating_.push_back(OrbitMap{static_cast<int>(k), static_cast<int>(k), p});
}

const std::vector<int>& FiniteGroup::map_points(int source, int target) const {
  return map_points_[static_cast<std::size_t>(source) * classes_.size() + target];
}

std::vector<OrbitMap> FiniteGroup::maps(int source, int target) const {
  std::vector<OrbitMap> out;
  for (int p : map_points(source, target)) out.push_back(OrbitMap{source, target, p});
  return out;
}

std::size_t FiniteGroup::map_index(const OrbitMap& m) const {
  const auto& pts = map_points(m.source, m.target);
  auto it = std::lower_bound(pts.begin(), pts.end(), m.point);
  if (it == pts.end() || *it != m.point) throw std::invalid_argument("not an equivariant orbit map");
  return map_offset_[static_cast<std::size_t>(m.source) * classes_.size() + m.target] +
         static_cast<std::size_t>(it - pts.begin());
}

OrbitMap FiniteGroup::compose(const OrbitMap& psi, const OrbitMap& phi) const {
  if (phi.target != psi.source) throw std::invalid_argument("compose: maps are not composable");
  return OrbitMap{phi.source, psi.target, cosets_[psi.target].act(point_rep(phi), psi.point)};
}

OrbitMap FiniteGroup::inverse(const OrbitMap& iso) const {
  if (iso.source != iso.target) throw std::invalid_argument("inverse: map is not an automorphism");
  return OrbitMap{iso.source, iso.source, cosets_[iso.source].label_of[inv(point_rep(iso))]};
}

OrbitMap FiniteGroup::automorphism(int k, Element n) const {
  if (!contains(classes_[k].normalizer, n)) throw std::invalid_argument("automorphism: element does not normalize");
  return OrbitMap{k, k, cosets_[k].label_of[n]};
}

std::vector<PullbackOrbit> FiniteGroup::pullback(const OrbitMap& first, const OrbitMap& second) const {
  if (first.target != second.target) throw std::invalid_argument("pullback: maps have different targets");
  const CosetSpace& cb = cosets_[second.source];
  const CosetSpace& ct = cosets_[first.target];
  const Subset ha = classes_[first.source].representative;
  const Subset hb = classes_[second.source].representative;
  std::vector<bool> seen(cb.size, false);
  std::vector<PullbackOrbit> out;
  for (std::size_t v = 0; v < cb.size; ++v) {
    if (seen[v] || ct.act(cb.rep[v], second.point) != first.point) continue;
    for (Element h : members(ha)) seen[cb.act(h, static_cast<int>(v))] = true;
    Subset stab = ha & conjugate(hb, cb.rep[v]);
    int k = class_of(stab);
    Element c = conjugator(stab);
    PullbackOrbit o;
    o.cls = k;
    o.to_first = OrbitMap{k, first.source, cosets_[first.source].label_of[c]};
    o.to_second = OrbitMap{k, second.source, cb.act(c, static_cast<int>(v))};
    out.push_back(o);
  }
  return out;
}

std::string FiniteGroup::describe() const {
  std::ostringstream os;
  os << name_ << " of order " << order_ << ", " << classes_.size() << " subgroup classes";
  return os.str();
}

}  // namespace mackeykit
