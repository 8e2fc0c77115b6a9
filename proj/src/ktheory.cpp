#include "mackeykit/ktheory.hpp"

#include <algorithm>

#include "mackeykit/burnside.hpp"

namespace mackeykit {

std::size_t SliceK0::index_of(int cls, int point) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), std::make_pair(cls, point));
  if (it == basis.end() || *it != std::make_pair(cls, point)) throw std::logic_error("not a canonical slice code");
  return static_cast<std::size_t>(it - basis.begin());
}

std::pair<int, int> slice_code(const GSet& x, Subset stab, int y) {
  const FiniteGroup& g = *x.group();
  const int l = g.class_of(stab);
  const Element c = g.conjugator(stab);
  const int moved = x.act(c, y);
  int best = moved;
  const Subset n = g.subgroup_class(l).normalizer;
  for (Element e = 0; e < static_cast<Element>(g.order()); ++e)
    if (contains(n, e)) best = std::min(best, x.act(e, moved));
  return {l, best};
}

SliceK0 k0_of_slice(const GSet& x) {
  const FiniteGroup& g = *x.group();
  SliceK0 out;
  out.base = x;
  for (int l = 0; l < static_cast<int>(g.class_count()); ++l)
    for (int y = 0; y < static_cast<int>(x.size()); ++y)
      if (x.is_fixed(y, g.rep(l))) {
        auto code = slice_code(x, g.rep(l), y);
        if (code.second == y) out.basis.push_back(code);
      }
  std::sort(out.basis.begin(), out.basis.end());
  out.group = AbGroup::free(out.basis.size());
  return out;
}

namespace {

// The structure map G-set over G/H_cls.
GMap structure_map(const GroupPtr& g, int target, const std::pair<int, int>& code) {
  return orbit_gmap(g, OrbitMap{code.first, target, code.second});
}

// The pullback of f1 along f2, as a G-set over the source of f2.
Vector pullback_codes(const GroupPtr& g, const GMap& f1, const GMap& f2, const SliceK0& over) {
  PullbackResult p = pullback(f1, f2);
  Vector v = zero_vector(over.basis.size());
  for (const auto& o : p.set.orbits()) {
    const int b = o.points[0];
    auto code = slice_code(over.base, g->rep(o.cls), p.second(b));
    v[over.index_of(code.first, code.second)] += 1;
  }
  return v;
}

}  // namespace

MackeyFunctor k0_mackey(const GroupPtr& g) {
  std::vector<SliceK0> slices;
  for (int j = 0; j < static_cast<int>(g->class_count()); ++j) slices.push_back(k0_of_slice(GSet::orbit(g, j)));
  MackeyData data;
  for (const auto& s : slices) data.levels.push_back(s.group);
  for (const OrbitMap& phi : g->generating_maps()) {
    const SliceK0& src = slices[phi.source];
    const SliceK0& tgt = slices[phi.target];
    GMap theta = orbit_gmap(g, phi);
    Matrix tr(tgt.basis.size(), src.basis.size());
    for (std::size_t i = 0; i < src.basis.size(); ++i) {
      const auto& [l, y] = src.basis[i];
      auto code = slice_code(tgt.base, g->rep(l), theta(y));
      tr(tgt.index_of(code.first, code.second), i) = 1;
    }
    Matrix res(src.basis.size(), tgt.basis.size());
    for (std::size_t i = 0; i < tgt.basis.size(); ++i) {
      GMap f = structure_map(g, phi.target, tgt.basis[i]);
      res.set_column(i, pullback_codes(g, f, theta, src));
    }
    data.res.push_back(std::move(res));
    data.tr.push_back(std::move(tr));
  }
  return MackeyFunctor::from_generators(g, std::move(data), {Validation::kStructural, 0, 1});
}

GreenFunctor k0_green(const GroupPtr& g) {
  MackeyFunctor m = k0_mackey(g);
  std::vector<Matrix> tables;
  std::vector<Vector> units;
  for (int j = 0; j < static_cast<int>(g->class_count()); ++j) {
    SliceK0 s = k0_of_slice(GSet::orbit(g, j));
    const std::size_t n = s.basis.size();
    Matrix t(n, n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        // fibre product over G/H_j, re-read over G/H_j through the second factor
        GMap fb = structure_map(g, j, s.basis[b]);
        PullbackResult p = pullback(structure_map(g, j, s.basis[a]), fb);
        Vector v = zero_vector(n);
        for (const auto& o : p.set.orbits()) {
          auto code = slice_code(s.base, g->rep(o.cls), fb(p.second(o.points[0])));
          v[s.index_of(code.first, code.second)] += 1;
        }
        t.set_column(a * n + b, v);
      }
    tables.push_back(std::move(t));
    units.push_back(unit_vector(n, s.index_of(j, 0)));
  }
  return green_from_levelwise(m, std::move(tables), std::move(units));
}

BpqResult bpq_verify(const GroupPtr& g) {
  GreenFunctor k0 = k0_green(g);
  GreenFunctor burn = burnside_green(g);
  GSet pt = GSet::point(g);
  std::vector<Matrix> comps;
  for (int j = 0; j < static_cast<int>(g->class_count()); ++j) {
    const std::string where = "level " + g->subgroup_class(j).label;
    GSet oj = GSet::orbit(g, j);
    SliceK0 s = k0_of_slice(oj);
    auto basis = hom_basis(pt, oj);
    if (basis.size() != s.basis.size())
      throw VerificationError(where + ": " + std::to_string(s.basis.size()) + " slice classes but " +
                              std::to_string(basis.size()) + " spans");
    Matrix p(basis.size(), s.basis.size());
    for (std::size_t i = 0; i < s.basis.size(); ++i) {
      const auto& [l, y] = s.basis[i];
      SpanCode c = span_code(pt, oj, g->rep(l), 0, y);
      auto it = std::find(basis.begin(), basis.end(), c);
      if (it == basis.end()) throw VerificationError(where + ": slice class has no matching span");
      p(static_cast<std::size_t>(it - basis.begin()), i) = 1;
    }
    if (!is_isomorphism(p, k0.underlying().level(j), burn.underlying().level(j)))
      throw VerificationError(where + ": basis matching is not a bijection");
    const std::size_t n = s.basis.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Vector ea = unit_vector(n, a), eb = unit_vector(n, b);
        if (p * k0.multiply(j, ea, eb) != burn.multiply(j, p * ea, p * eb))
          throw VerificationError(where + ": products differ on (" + std::to_string(a) + ", " + std::to_string(b) + ")");
      }
    if (p * k0.unit(j) != burn.unit(j)) throw VerificationError(where + ": units differ");
    comps.push_back(std::move(p));
  }
  if (auto f = morphism_failure(k0.underlying(), burn.underlying(), comps))
    throw VerificationError("basis matching does not commute with structure maps: " + *f);
  IsoWitness iso = make_iso_witness(MackeyMorphism(k0.underlying(), burn.underlying(), std::move(comps), false));
  return {k0, burn, iso};
}

}  // namespace mackeykit
