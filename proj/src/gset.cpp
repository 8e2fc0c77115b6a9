#include "mackeykit/gset.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mackeykit {

GSet::GSet(GroupPtr group, std::size_t size, std::vector<int> action) {
  if (!group) throw std::invalid_argument("GSet: null group");
  const std::size_t n = group->order();
  if (action.size() != n * size) throw std::invalid_argument("GSet: action table has wrong size");
  for (int v : action)
    if (v < 0 || static_cast<std::size_t>(v) >= size) throw std::invalid_argument("GSet: action entry out of range");
  auto d = std::make_shared<Data>();
  d->group = std::move(group);
  d->size = size;
  d->action = std::move(action);
  const FiniteGroup& g = *d->group;
  auto act = [&](Element e, int x) { return d->action[static_cast<std::size_t>(e) * size + x]; };
  for (std::size_t x = 0; x < size; ++x)
    if (act(0, static_cast<int>(x)) != static_cast<int>(x)) throw std::invalid_argument("GSet: identity does not act trivially");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t x = 0; x < size; ++x)
        if (act(g.mul(static_cast<Element>(a), static_cast<Element>(b)), static_cast<int>(x)) !=
            act(static_cast<Element>(a), act(static_cast<Element>(b), static_cast<int>(x))))
          throw std::invalid_argument("GSet: action is not compatible with multiplication");

  d->orbit_of.assign(size, -1);
  d->coset_of.assign(size, -1);
  for (std::size_t x0 = 0; x0 < size; ++x0) {
    if (d->orbit_of[x0] >= 0) continue;
    std::vector<int> pts;
    for (Element e = 0; e < static_cast<Element>(n); ++e) pts.push_back(act(e, static_cast<int>(x0)));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    int base = -1, cls = -1;
    for (int x : pts) {
      Subset stab = 0;
      for (Element e = 0; e < static_cast<Element>(n); ++e)
        if (act(e, x) == x) stab |= Subset(1) << e;
      int k = g.class_of(stab);
      if (g.rep(k) == stab) {
        base = x;
        cls = k;
        break;
      }
    }
    Orbit o;
    o.cls = cls;
    const CosetSpace& cs = g.cosets(cls);
    o.points.resize(cs.size);
    const int idx = static_cast<int>(d->orbits.size());
    for (std::size_t c = 0; c < cs.size; ++c) {
      int x = act(cs.rep[c], base);
      o.points[c] = x;
      d->orbit_of[x] = idx;
      d->coset_of[x] = static_cast<int>(c);
    }
    d->orbits.push_back(std::move(o));
  }
  d_ = std::move(d);
}

GSet GSet::orbit(GroupPtr group, int k) {
  const CosetSpace& cs = group->cosets(k);
  return GSet(group, cs.size, cs.action);
}

GSet GSet::point(GroupPtr group) {
  std::size_t n = group->order();
  return GSet(std::move(group), 1, std::vector<int>(n, 0));
}

GSet GSet::empty(GroupPtr group) { return GSet(std::move(group), 0, {}); }

GSet GSet::from_orbits(GroupPtr group, const std::vector<std::pair<int, int>>& counts) {
  const std::size_t n = group->order();
  std::vector<const CosetSpace*> parts;
  std::size_t size = 0;
  for (auto [k, mult] : counts) {
    if (k < 0 || static_cast<std::size_t>(k) >= group->class_count() || mult < 0)
      throw std::invalid_argument("from_orbits: bad orbit specification");
    for (int i = 0; i < mult; ++i) {
      parts.push_back(&group->cosets(k));
      size += group->cosets(k).size;
    }
  }
  std::vector<int> action(n * size);
  std::size_t off = 0;
  for (const CosetSpace* cs : parts) {
    for (std::size_t e = 0; e < n; ++e)
      for (std::size_t c = 0; c < cs->size; ++c)
        action[e * size + off + c] = static_cast<int>(off) + cs->act(static_cast<Element>(e), static_cast<int>(c));
    off += cs->size;
  }
  return GSet(std::move(group), size, std::move(action));
}

std::vector<std::pair<int, int>> GSet::orbit_type() const {
  std::map<int, int> m;
  for (const auto& o : d_->orbits) ++m[o.cls];
  return {m.begin(), m.end()};
}

Subset GSet::stabilizer(int x) const {
  Subset s = 0;
  for (Element e = 0; e < static_cast<Element>(group()->order()); ++e)
    if (act(e, x) == x) s |= Subset(1) << e;
  return s;
}

bool GSet::is_fixed(int x, Subset h) const {
  for (Element e : members(h))
    if (act(e, x) != x) return false;
  return true;
}

std::pair<int, OrbitMap> GSet::map_from_orbit(int cls, int y) const {
  if (!is_fixed(y, group()->rep(cls))) throw std::invalid_argument("map_from_orbit: point is not fixed");
  int o = orbit_of(y);
  return {o, OrbitMap{cls, d_->orbits[o].cls, coset_of(y)}};
}

bool GSet::operator==(const GSet& o) const {
  if (d_ == o.d_) return true;
  if (!d_ || !o.d_) return false;
  return d_->group == o.d_->group && d_->size == o.d_->size && d_->action == o.d_->action;
}

GMap::GMap(GSet source, GSet target, std::vector<int> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (source_.group() != target_.group()) throw std::invalid_argument("GMap: group mismatch");
  if (map_.size() != source_.size()) throw std::invalid_argument("GMap: map has wrong length");
  for (int v : map_)
    if (v < 0 || static_cast<std::size_t>(v) >= target_.size()) throw std::invalid_argument("GMap: value out of range");
  for (Element e = 0; e < static_cast<Element>(source_.group()->order()); ++e)
    for (std::size_t x = 0; x < map_.size(); ++x)
      if (map_[source_.act(e, static_cast<int>(x))] != target_.act(e, map_[x]))
        throw std::invalid_argument("GMap: map is not equivariant");
}

GMap GMap::identity(const GSet& x) {
  std::vector<int> m(x.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<int>(i);
  return GMap(x, x, std::move(m));
}

bool GMap::is_bijective() const {
  if (source_.size() != target_.size()) return false;
  std::vector<bool> hit(target_.size(), false);
  for (int v : map_) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

GMap compose(const GMap& g, const GMap& f) {
  if (f.target() != g.source()) throw std::invalid_argument("compose: G-maps are not composable");
  std::vector<int> m(f.source().size());
  for (std::size_t x = 0; x < m.size(); ++x) m[x] = g(f(static_cast<int>(x)));
  return GMap(f.source(), g.target(), std::move(m));
}

GMap orbit_gmap(const GroupPtr& g, const OrbitMap& m) {
  const CosetSpace& s = g->cosets(m.source);
  const CosetSpace& t = g->cosets(m.target);
  std::vector<int> v(s.size);
  for (std::size_t c = 0; c < s.size; ++c) v[c] = t.act(s.rep[c], m.point);
  return GMap(GSet::orbit(g, m.source), GSet::orbit(g, m.target), std::move(v));
}

GMap product_map(const GMap& f, const GMap& g) {
  GSet src = product_set(f.source(), g.source());
  GSet dst = product_set(f.target(), g.target());
  const std::size_t ns = g.source().size(), nt = g.target().size();
  std::vector<int> v(src.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = static_cast<int>(static_cast<std::size_t>(f(static_cast<int>(i / ns))) * nt +
                            static_cast<std::size_t>(g(static_cast<int>(i % ns))));
  return GMap(src, dst, std::move(v));
}

GSet product_set(const GSet& x, const GSet& y) {
  if (x.group() != y.group()) throw std::invalid_argument("product: group mismatch");
  const std::size_t n = x.group()->order(), nx = x.size(), ny = y.size();
  std::vector<int> action(n * nx * ny);
  for (std::size_t e = 0; e < n; ++e)
    for (std::size_t a = 0; a < nx; ++a)
      for (std::size_t b = 0; b < ny; ++b)
        action[e * nx * ny + a * ny + b] =
            static_cast<int>(x.act(static_cast<Element>(e), static_cast<int>(a)) * ny +
                             y.act(static_cast<Element>(e), static_cast<int>(b)));
  return GSet(x.group(), nx * ny, std::move(action));
}

ProductResult product(const GSet& x, const GSet& y) {
  GSet p = product_set(x, y);
  std::vector<int> f(p.size()), s(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    f[i] = static_cast<int>(i / y.size());
    s[i] = static_cast<int>(i % y.size());
  }
  return {p, GMap(p, x, std::move(f)), GMap(p, y, std::move(s))};
}

CoproductResult coproduct(const GSet& x, const GSet& y) {
  if (x.group() != y.group()) throw std::invalid_argument("coproduct: group mismatch");
  const std::size_t n = x.group()->order(), nx = x.size(), ny = y.size(), size = nx + ny;
  std::vector<int> action(n * size);
  for (std::size_t e = 0; e < n; ++e) {
    for (std::size_t a = 0; a < nx; ++a) action[e * size + a] = x.act(static_cast<Element>(e), static_cast<int>(a));
    for (std::size_t b = 0; b < ny; ++b)
      action[e * size + nx + b] = static_cast<int>(nx) + y.act(static_cast<Element>(e), static_cast<int>(b));
  }
  GSet c(x.group(), size, std::move(action));
  std::vector<int> l(nx), r(ny);
  for (std::size_t a = 0; a < nx; ++a) l[a] = static_cast<int>(a);
  for (std::size_t b = 0; b < ny; ++b) r[b] = static_cast<int>(nx + b);
  return {c, GMap(x, c, std::move(l)), GMap(y, c, std::move(r))};
}

PullbackResult pullback(const GMap& f, const GMap& g) {
  if (f.target() != g.target()) throw std::invalid_argument("pullback: maps have different targets");
  const GSet& x = f.source();
  const GSet& y = g.source();
  std::vector<std::pair<int, int>> pts;
  std::map<std::pair<int, int>, int> index;
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < y.size(); ++b)
      if (f(static_cast<int>(a)) == g(static_cast<int>(b))) {
        index[{static_cast<int>(a), static_cast<int>(b)}] = static_cast<int>(pts.size());
        pts.emplace_back(static_cast<int>(a), static_cast<int>(b));
      }
  const std::size_t n = x.group()->order(), size = pts.size();
  std::vector<int> action(n * size);
  for (std::size_t e = 0; e < n; ++e)
    for (std::size_t i = 0; i < size; ++i)
      action[e * size + i] =
          index.at({x.act(static_cast<Element>(e), pts[i].first), y.act(static_cast<Element>(e), pts[i].second)});
  GSet p(x.group(), size, std::move(action));
  std::vector<int> p1(size), p2(size);
  for (std::size_t i = 0; i < size; ++i) {
    p1[i] = pts[i].first;
    p2[i] = pts[i].second;
  }
  return {p, GMap(p, x, std::move(p1)), GMap(p, y, std::move(p2))};
}

std::vector<int> fixed_points(const GSet& x, Subset h) {
  if (!x.group()->is_subgroup(h)) throw std::invalid_argument("fixed_points: not a subgroup");
  std::vector<int> out;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x.is_fixed(static_cast<int>(i), h)) out.push_back(static_cast<int>(i));
  return out;
}

OrbitDecomposition orbit_decompose(const GSet& x) {
  OrbitDecomposition d;
  d.type = x.orbit_type();
  d.canonical = GSet::from_orbits(x.group(), d.type);
  // canonical orbits are grouped by class; assign X's orbits in order
  std::map<int, int> next_offset;
  std::size_t off = 0;
  for (auto [k, mult] : d.type) {
    next_offset[k] = static_cast<int>(off);
    off += static_cast<std::size_t>(mult) * x.group()->cosets(k).size;
  }
  std::vector<int> m(x.size());
  for (const auto& o : x.orbits()) {
    int base = next_offset[o.cls];
    for (std::size_t c = 0; c < o.points.size(); ++c) m[o.points[c]] = base + static_cast<int>(c);
    next_offset[o.cls] = base + static_cast<int>(o.points.size());
  }
  d.iso = GMap(x, d.canonical, std::move(m));
  return d;
}

std::optional<GMap> find_isomorphism(const GSet& x, const GSet& y) {
  if (x.group() != y.group()) throw std::invalid_argument("find_isomorphism: group mismatch");
  if (x.size() != y.size() || x.orbit_type() != y.orbit_type()) return std::nullopt;
  // basepoints of orbits of the same class have identical stabilizers, so
  // matching basepoints extends to an equivariant bijection
  std::map<int, std::vector<int>> pool;
  for (std::size_t i = 0; i < y.orbit_count(); ++i) pool[y.orbits()[i].cls].push_back(static_cast<int>(i));
  std::map<int, std::size_t> used;
  std::vector<int> m(x.size());
  for (const auto& o : x.orbits()) {
    const auto& target = y.orbits()[pool[o.cls][used[o.cls]++]];
    for (std::size_t c = 0; c < o.points.size(); ++c) m[o.points[c]] = target.points[c];
  }
  return GMap(x, y, std::move(m));
}

GSet relabel(const GSet& x, const std::vector<int>& perm) {
  const std::size_t n = x.group()->order(), size = x.size();
  if (perm.size() != size) throw std::invalid_argument("relabel: permutation has wrong length");
  std::vector<int> action(n * size);
  for (std::size_t e = 0; e < n; ++e)
    for (std::size_t i = 0; i < size; ++i)
      action[e * size + perm[i]] = perm[x.act(static_cast<Element>(e), static_cast<int>(i))];
  return GSet(x.group(), size, std::move(action));
}

}  // namespace mackeykit
