#include "mackeykit/convolution.hpp"

#include <sstream>

namespace mackeykit {

namespace {

std::string label(const FiniteGroup& g, int k) { return g.subgroup_class(k).label; }

// Position of the code (k, 0), i.e. pt <- G/H_k = G/H_k, in hom_basis(pt, G/H_k).
std::size_t identity_code_position(const GroupPtr& g, int k) {
  GSet pt = GSet::point(g);
  GSet ok = GSet::orbit(g, k);
  return basis_position(hom_basis(pt, ok), span_code(pt, ok, g->rep(k), 0, 0));
}

Vector flat_pair(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

// t * (a (x) b) without forming the tensor; skips zero coefficients.
Vector bilinear(const Matrix& t, const Vector& a, const Vector& b) {
  Vector out = zero_vector(t.rows());
  Integer c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      c = a[i] * b[j];
      const std::size_t col = i * b.size() + j;
      for (std::size_t r = 0; r < out.size(); ++r)
        if (t(r, col) != 0) out[r] += c * t(r, col);
    }
  }
  return out;
}

Vector slice(const Vector& v, std::size_t begin, std::size_t end) {
  return Vector(v.begin() + static_cast<std::ptrdiff_t>(begin), v.begin() + static_cast<std::ptrdiff_t>(end));
}

}  // namespace

BoxProduct::BoxProduct(MackeyFunctor m, MackeyFunctor n) : m_(std::move(m)), n_(std::move(n)) {
  if (m_.group() != n_.group()) throw std::invalid_argument("box: group mismatch");
  const GroupPtr& gp = m_.group();
  const FiniteGroup& g = *gp;
  const int nc = static_cast<int>(g.class_count());
  levels_.resize(nc);
  block_of_map_.assign(g.map_count(), 0);
  for (std::size_t idx = 0; idx < g.map_count(); ++idx) {
    Level& l = levels_[g.map_at(idx).target];
    block_of_map_[idx] = l.maps.size();
    l.maps.push_back(idx);
  }
  auto block_size = [&](int k) { return m_.level(k).ngens() * n_.level(k).ngens(); };
  for (Level& l : levels_) {
    l.offsets.push_back(0);
    for (std::size_t idx : l.maps) l.offsets.push_back(l.offsets.back() + block_size(g.map_at(idx).source));
  }

  for (int j = 0; j < nc; ++j) {
    Level& l = levels_[j];
    const std::size_t raw = l.offsets.back();
    std::vector<Vector> rels;
    for (std::size_t bi = 0; bi < l.maps.size(); ++bi) {
      const OrbitMap& psi = g.map_at(l.maps[bi]);
      const int k = psi.source;
      const std::size_t off = l.offsets[bi];
      const AbGroup& mk = m_.level(k);
      const AbGroup& nk = n_.level(k);
      const std::size_t a = mk.ngens(), b = nk.ngens();
      for (std::size_t i = 0; i < a; ++i)
        for (std::size_t t = 0; t < b; ++t) {
          Integer d = gcd(mk.modulus(i), nk.modulus(t));
          if (d == 0) continue;
          Vector v = zero_vector(raw);
          v[off + i * b + t] = d;
          rels.push_back(std::move(v));
        }
      for (const OrbitMap& alpha : g.generating_maps()) {
        if (alpha.target != k) continue;
        const int k2 = alpha.source;
        const std::size_t off2 = block_offset(g.compose(psi, alpha));
        const std::size_t a2 = m_.level(k2).ngens(), b2 = n_.level(k2).ngens();
        const Matrix& res_n = n_.res(alpha);
        const Matrix& tr_m = m_.tr(alpha);
        for (std::size_t i = 0; i < a2; ++i)
          for (std::size_t t = 0; t < b; ++t) {
            Vector v = zero_vector(raw);
            for (std::size_t u = 0; u < b2; ++u) v[off2 + i * b2 + u] += res_n(u, t);
            for (std::size_t s = 0; s < a; ++s) v[off + s * b + t] -= tr_m(s, i);
            rels.push_back(std::move(v));
          }
        const Matrix& res_m = m_.res(alpha);
        const Matrix& tr_n = n_.tr(alpha);
        for (std::size_t i = 0; i < a; ++i)
          for (std::size_t t = 0; t < b2; ++t) {
            Vector v = zero_vector(raw);
            for (std::size_t s = 0; s < a2; ++s) v[off2 + s * b2 + t] += res_m(s, i);
            for (std::size_t u = 0; u < b; ++u) v[off + i * b + u] -= tr_n(u, t);
            rels.push_back(std::move(v));
          }
      }
    }
    l.pres = present(raw, Matrix::from_columns(raw, rels));
  }

  MackeyData data;
  for (const Level& l : levels_) data.levels.push_back(l.pres.group);
  for (const OrbitMap& theta : g.generating_maps()) {
    const int j = theta.source, j2 = theta.target;
    const Level& ls = levels_[j];
    const Level& lt = levels_[j2];
    Matrix tr_raw(lt.offsets.back(), ls.offsets.back());
    for (std::size_t bi = 0; bi < ls.maps.size(); ++bi) {
      const OrbitMap& psi = g.map_at(ls.maps[bi]);
      const std::size_t dst = block_offset(g.compose(theta, psi));
      for (std::size_t e = ls.offsets[bi]; e < ls.offsets[bi + 1]; ++e) tr_raw(dst + e - ls.offsets[bi], e) = 1;
    }
    Matrix res_raw(ls.offsets.back(), lt.offsets.back());
    for (std::size_t bi = 0; bi < lt.maps.size(); ++bi) {
      const OrbitMap& psi = g.map_at(lt.maps[bi]);
      for (const PullbackOrbit& o : g.pullback(theta, psi))
        res_raw.add_block(block_offset(o.to_first), lt.offsets[bi],
                          kronecker(m_.res(o.to_second), n_.res(o.to_second)));
    }
    data.tr.push_back(lt.pres.to_group * tr_raw * ls.pres.from_group);
    data.res.push_back(ls.pres.to_group * res_raw * lt.pres.from_group);
  }
  object_ = MackeyFunctor::from_generators(gp, std::move(data));
}

std::size_t BoxProduct::block_offset(const OrbitMap& psi) const {
  const std::size_t idx = group()->map_index(psi);
  return levels_[psi.target].offsets[block_of_map_[idx]];
}

Vector BoxProduct::raw_pair(const OrbitMap& psi, const Vector& m, const Vector& n) const {
  Vector raw = zero_vector(raw_size(psi.target));
  const std::size_t off = block_offset(psi);
  Vector p = flat_pair(m, n);
  for (std::size_t i = 0; i < p.size(); ++i) raw[off + i] = p[i];
  return raw;
}

Vector BoxProduct::pair(const OrbitMap& psi, const Vector& m, const Vector& n) const {
  return object_.level(psi.target).normalize(to_level(psi.target) * raw_pair(psi, m, n));
}

Vector BoxProduct::external(const GSet& u, const Vector& m, const GSet& v, const Vector& n) const {
  const FiniteGroup& g = *group();
  GSet uv = product_set(u, v);
  auto ou = m_.offsets(u), ov = n_.offsets(v), out_off = object_.offsets(uv);
  Vector out = zero_vector(out_off.back());
  const int nv = static_cast<int>(v.size());
  for (std::size_t i = 0; i < uv.orbit_count(); ++i) {
    const auto& o = uv.orbits()[i];
    const int p = o.points[0];
    auto [iu, phi_u] = u.map_from_orbit(o.cls, p / nv);
    auto [iv, phi_v] = v.map_from_orbit(o.cls, p % nv);
    Vector mm = m_.res(phi_u) * slice(m, ou[iu], ou[iu + 1]);
    Vector nn = n_.res(phi_v) * slice(n, ov[iv], ov[iv + 1]);
    Vector c = pair(g.identity(o.cls), mm, nn);
    for (std::size_t t = 0; t < c.size(); ++t) out[out_off[i] + t] = c[t];
  }
  return out;
}

MackeyMorphism box_map(const MackeyMorphism& f, const MackeyMorphism& g, const BoxProduct& source,
                       const BoxProduct& target) {
  const FiniteGroup& grp = *source.group();
  std::vector<Matrix> comps;
  for (int j = 0; j < static_cast<int>(grp.class_count()); ++j) {
    Matrix raw(target.raw_size(j), source.raw_size(j));
    for (const OrbitMap& psi : grp.all_maps()) {
      if (psi.target != j) continue;
      raw.add_block(target.block_offset(psi), source.block_offset(psi), kronecker(f.at(psi.source), g.at(psi.source)));
    }
    comps.push_back(target.to_level(j) * raw * source.from_level(j));
  }
  return MackeyMorphism(source.object(), target.object(), std::move(comps), true);
}

IsoWitness box_unit_iso(const BoxProduct& ub) {
  const GroupPtr& gp = ub.group();
  const FiniteGroup& g = *gp;
  const MackeyFunctor& m = ub.right();
  GSet pt = GSet::point(gp);
  std::vector<Matrix> comps;
  for (int j = 0; j < static_cast<int>(g.class_count()); ++j) {
    Matrix raw(m.level(j).ngens(), ub.raw_size(j));
    for (const OrbitMap& psi : g.all_maps()) {
      if (psi.target != j) continue;
      const int k = psi.source;
      GSet ok = GSet::orbit(gp, k);
      auto codes = hom_basis(pt, ok);
      if (codes.size() != ub.left().level(k).ngens())
        throw std::invalid_argument("box_unit_iso: left factor is not the Burnside functor");
      const std::size_t off = ub.block_offset(psi), b = m.level(k).ngens();
      for (std::size_t c = 0; c < codes.size(); ++c) {
        OrbitMap phi = ok.map_from_orbit(codes[c].cls, codes[c].point).second;
        Matrix t = m.tr(psi) * m.tr(phi) * m.res(phi);
        for (std::size_t i = 0; i < b; ++i) raw.set_column(off + c * b + i, t.column(i));
      }
    }
    comps.push_back(raw * ub.from_level(j));
  }
  return make_iso_witness(MackeyMorphism(ub.object(), m, std::move(comps), true));
}

IsoWitness box_comm_iso(const BoxProduct& mn, const BoxProduct& nm) {
  const FiniteGroup& g = *mn.group();
  std::vector<Matrix> comps;
  for (int j = 0; j < static_cast<int>(g.class_count()); ++j) {
    Matrix raw(nm.raw_size(j), mn.raw_size(j));
    for (const OrbitMap& psi : g.all_maps()) {
      if (psi.target != j) continue;
      const std::size_t a = mn.left().level(psi.source).ngens(), b = mn.right().level(psi.source).ngens();
      const std::size_t s = mn.block_offset(psi), t = nm.block_offset(psi);
      for (std::size_t i = 0; i < a; ++i)
        for (std::size_t u = 0; u < b; ++u) raw(t + u * a + i, s + i * b + u) = 1;
    }
    comps.push_back(nm.to_level(j) * raw * mn.from_level(j));
  }
  return make_iso_witness(MackeyMorphism(mn.object(), nm.object(), std::move(comps), true));
}

TripleBox box_associator(const MackeyFunctor& m, const MackeyFunctor& n, const MackeyFunctor& p) {
  BoxProduct mn(m, n);
  BoxProduct mn_p(mn.object(), p);
  BoxProduct np(n, p);
  BoxProduct m_np(m, np.object());
  const FiniteGroup& g = *m.group();
  std::vector<Matrix> comps;
  for (int j = 0; j < static_cast<int>(g.class_count()); ++j) {
    Matrix raw(m_np.raw_size(j), mn_p.raw_size(j));
    for (const OrbitMap& psi : g.all_maps()) {
      if (psi.target != j) continue;
      const int k = psi.source;
      const std::size_t na = mn.object().level(k).ngens(), nc = p.level(k).ngens();
      const std::size_t off = mn_p.block_offset(psi);
      for (std::size_t a = 0; a < na; ++a) {
        Vector lift = mn.from_level(k).column(a);
        for (std::size_t c = 0; c < nc; ++c) {
          const std::size_t col = off + a * nc + c;
          for (const OrbitMap& psi2 : g.all_maps()) {
            if (psi2.target != k) continue;
            const int k2 = psi2.source;
            const std::size_t am = m.level(k2).ngens(), bn = n.level(k2).ngens();
            const std::size_t off2 = mn.block_offset(psi2);
            const OrbitMap chi = g.compose(psi, psi2);
            const std::size_t dst = m_np.block_offset(chi), ny = np.object().level(k2).ngens();
            Vector p2 = p.res(psi2) * unit_vector(nc, c);
            for (std::size_t x = 0; x < am; ++x)
              for (std::size_t y = 0; y < bn; ++y) {
                const Integer& coef = lift[off2 + x * bn + y];
                if (coef == 0) continue;
                Vector z = np.pair(g.identity(k2), unit_vector(bn, y), p2);
                for (std::size_t t = 0; t < ny; ++t) raw(dst + x * ny + t, col) += coef * z[t];
              }
          }
        }
      }
    }
    comps.push_back(m_np.to_level(j) * raw * mn_p.from_level(j));
  }
  IsoWitness w = make_iso_witness(MackeyMorphism(mn_p.object(), m_np.object(), std::move(comps), true));
  return {mn, mn_p, np, m_np, w};
}

RepresentableMonoidal representable_monoidal(const GSet& x, const GSet& y) {
  const GroupPtr& gp = x.group();
  const FiniteGroup& g = *gp;
  BoxProduct box(representable(x), representable(y));
  GSet xy = product_set(x, y);
  MackeyFunctor axy = representable(xy);
  std::vector<Matrix> comps;
  for (int j = 0; j < static_cast<int>(g.class_count()); ++j) {
    GSet oj = GSet::orbit(gp, j);
    Matrix raw(axy.level(j).ngens(), box.raw_size(j));
    for (const OrbitMap& psi : g.all_maps()) {
      if (psi.target != j) continue;
      const int k = psi.source;
      GSet ok = GSet::orbit(gp, k);
      ProductResult kk = product(ok, ok);
      std::vector<int> diag(ok.size());
      for (std::size_t c = 0; c < ok.size(); ++c) diag[c] = static_cast<int>(c * ok.size() + c);
      BurnsideElement delta = span_canonicalize(GMap(ok, kk.set, diag), GMap::identity(ok));
      BurnsideElement push = span_canonicalize(GMap::identity(ok), orbit_gmap(gp, psi));
      auto bx = hom_basis(x, ok), by = hom_basis(y, ok);
      const std::size_t off = box.block_offset(psi);
      for (std::size_t s = 0; s < bx.size(); ++s)
        for (std::size_t t = 0; t < by.size(); ++t) {
          BurnsideElement st = tensor(BurnsideElement::basis(x, ok, bx[s]), BurnsideElement::basis(y, ok, by[t]));
          BurnsideElement e = compose(push, compose(delta, st));
          raw.set_column(off + s * by.size() + t, e.coordinates());
        }
    }
    comps.push_back(raw * box.from_level(j));
  }
  IsoWitness w = make_iso_witness(MackeyMorphism(box.object(), axy, std::move(comps), true));
  return {box, axy, w};
}

MackeyFunctor internal_hom_rep(const GSet& x, const MackeyFunctor& m) {
  const GroupPtr& gp = m.group();
  const FiniteGroup& g = *gp;
  MackeyData data;
  for (int j = 0; j < static_cast<int>(g.class_count()); ++j)
    data.levels.push_back(m.value(product_set(x, GSet::orbit(gp, j))));
  GMap idx = GMap::identity(x);
  for (const OrbitMap& theta : g.generating_maps()) {
    GMap f = product_map(idx, orbit_gmap(gp, theta));
    data.res.push_back(m.pullback(f));
    data.tr.push_back(m.pushforward(f));
  }
  return MackeyFunctor::from_generators(gp, std::move(data));
}

FreeEvaluation free_evaluation(const MackeyFunctor& m, const GSet& x) {
  const GroupPtr& gp = m.group();
  const FiniteGroup& g = *gp;
  BoxProduct box(m, representable(x));
  MackeyFunctor shifted = internal_hom_rep(x, m);
  std::vector<Matrix> comps;
  for (int j = 0; j < static_cast<int>(g.class_count()); ++j) {
    GSet oj = GSet::orbit(gp, j);
    GSet xj = product_set(x, oj);
    auto offs = m.offsets(xj);
    const int nj = static_cast<int>(oj.size());
    Matrix raw(offs.back(), box.raw_size(j));
    for (const OrbitMap& psi : g.all_maps()) {
      if (psi.target != j) continue;
      const int k = psi.source;
      GSet ok = GSet::orbit(gp, k);
      const int nk = static_cast<int>(ok.size());
      auto codes = hom_basis(x, ok);
      const std::size_t off = box.block_offset(psi), a = m.level(k).ngens();
      for (std::size_t s = 0; s < codes.size(); ++s) {
        const int px = codes[s].point / nk, py = codes[s].point % nk;
        OrbitMap phi_y = ok.map_from_orbit(codes[s].cls, py).second;
        const int q = g.compose(psi, phi_y).point;
        auto [io, omega] = xj.map_from_orbit(codes[s].cls, px * nj + q);
        Matrix t = m.tr(omega) * m.res(phi_y);
        for (std::size_t i = 0; i < a; ++i) {
          Vector col = zero_vector(offs.back());
          Vector ti = t.column(i);
          for (std::size_t r = 0; r < ti.size(); ++r) col[offs[io] + r] = ti[r];
          raw.add_to_column(off + i * codes.size() + s, col);
        }
      }
    }
    comps.push_back(raw * box.from_level(j));
  }
  IsoWitness w = make_iso_witness(MackeyMorphism(box.object(), shifted, std::move(comps), true));
  return {box, shifted, w};
}

FreeOrbitMonoidal free_orbit_monoidal(const BoxProduct& box) {
  const FiniteGroup& g = *box.group();
  const int e = g.trivial_class();
  FreeOrbitMonoidal out;
  const AbGroup& me = box.left().level(e);
  const AbGroup& ne = box.right().level(e);
  out.tensor = tensor(me, ne);
  const AbGroup& target = box.object().level(e);
  out.map = Matrix(target.ngens(), out.tensor.group.ngens());
  const std::size_t off = box.block_offset(g.identity(e));
  for (std::size_t t = 0; t < out.tensor.group.ngens(); ++t) {
    Vector raw = zero_vector(box.raw_size(e));
    Vector lift = out.tensor.from_group.column(t);
    for (std::size_t i = 0; i < lift.size(); ++i) raw[off + i] = lift[i];
    out.map.set_column(t, target.normalize(box.to_level(e) * raw));
  }
  out.is_iso = is_isomorphism(out.map, out.tensor.group, target);
  out.equivariant = true;
  for (const OrbitMap& alpha : g.maps(e, e)) {
    Matrix conj = out.tensor.to_group * kronecker(box.left().res(alpha), box.right().res(alpha)) *
                  out.tensor.from_group;
    if (!maps_equal(box.object().res(alpha) * out.map, out.map * conj, target)) out.equivariant = false;
  }
  return out;
}

// ---------------------------------------------------------------------------

Vector GreenFunctor::multiply(int k, const Vector& x, const Vector& y) const {
  return r_.level(k).normalize(bilinear(tables_[k], x, y));
}

MackeyMorphism GreenFunctor::mult(const BoxProduct& rr) const {
  const FiniteGroup& g = *group();
  std::vector<Matrix> comps;
  for (int j = 0; j < static_cast<int>(g.class_count()); ++j) {
    Matrix raw(r_.level(j).ngens(), rr.raw_size(j));
    for (const OrbitMap& psi : g.all_maps()) {
      if (psi.target != j) continue;
      raw.set_block(0, rr.block_offset(psi), r_.tr(psi) * tables_[psi.source]);
    }
    comps.push_back(raw * rr.from_level(j));
  }
  return MackeyMorphism(rr.object(), r_, std::move(comps), true);
}

MackeyMorphism GreenFunctor::unit_map() const {
  return yoneda_morphism(GSet::point(group()), r_, units_[group()->top_class()]);
}

std::optional<std::string> green_failure(const MackeyFunctor& r, const std::vector<Matrix>& tables,
                                         const std::vector<Vector>& units) {
  const FiniteGroup& g = *r.group();
  const int nc = static_cast<int>(g.class_count());
  if (static_cast<int>(tables.size()) != nc || static_cast<int>(units.size()) != nc)
    return "expected one product table and one unit per level";
  auto cell = [](std::initializer_list<std::size_t> ids) {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (auto i : ids) {
      os << (first ? "" : ", ") << i;
      first = false;
    }
    os << ")";
    return os.str();
  };
  for (int k = 0; k < nc; ++k) {
    const AbGroup& rk = r.level(k);
    const std::size_t n = rk.ngens();
    if (tables[k].rows() != n || tables[k].cols() != n * n || units[k].size() != n)
      return "product data at level " + label(g, k) + " has the wrong shape";
    auto mul = [&](const Vector& x, const Vector& y) { return rk.normalize(bilinear(tables[k], x, y)); };
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Vector ab = tables[k].column(a * n + b);
        if (rk.modulus(a) != 0 && !rk.is_zero(rk.modulus(a) * ab))
          return "product at level " + label(g, k) + " does not respect torsion at " + cell({a, b});
        if (!rk.equal(ab, tables[k].column(b * n + a)))
          return "commutativity fails at level " + label(g, k) + " on generators " + cell({a, b});
      }
    for (std::size_t a = 0; a < n; ++a) {
      Vector ea = unit_vector(n, a);
      if (!rk.equal(mul(units[k], ea), ea))
        return "unit law fails at level " + label(g, k) + " on generator " + cell({a});
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          Vector eb = unit_vector(n, b), ec = unit_vector(n, c);
          if (!rk.equal(mul(mul(ea, eb), ec), mul(ea, mul(eb, ec))))
            return "associativity fails at level " + label(g, k) + " on generators " + cell({a, b, c});
        }
    }
  }
  for (const OrbitMap& phi : g.generating_maps()) {
    const int s = phi.source, t = phi.target;
    const AbGroup& rs = r.level(s);
    const AbGroup& rt = r.level(t);
    auto mul_s = [&](const Vector& x, const Vector& y) { return rs.normalize(bilinear(tables[s], x, y)); };
    auto mul_t = [&](const Vector& x, const Vector& y) { return rt.normalize(bilinear(tables[t], x, y)); };
    const std::string where = label(g, s) + "->" + label(g, t) + "@" + std::to_string(phi.point);
    if (!rs.equal(r.res(phi) * units[t], units[s])) return "res along " + where + " does not preserve the unit";
    for (std::size_t a = 0; a < rt.ngens(); ++a)
      for (std::size_t b = 0; b < rt.ngens(); ++b) {
        Vector ea = unit_vector(rt.ngens(), a), eb = unit_vector(rt.ngens(), b);
        if (!rs.equal(r.res(phi) * mul_t(ea, eb), mul_s(r.res(phi) * ea, r.res(phi) * eb)))
          return "res along " + where + " is not multiplicative on generators " + cell({a, b});
      }
    for (std::size_t a = 0; a < rs.ngens(); ++a)
      for (std::size_t b = 0; b < rt.ngens(); ++b) {
        Vector x = unit_vector(rs.ngens(), a), y = unit_vector(rt.ngens(), b);
        if (!rt.equal(r.tr(phi) * mul_s(x, r.res(phi) * y), mul_t(r.tr(phi) * x, y)))
          return "Frobenius reciprocity fails along " + where + " on generators " + cell({a, b});
      }
  }
  return std::nullopt;
}

GreenFunctor green_from_levelwise(const MackeyFunctor& r, std::vector<Matrix> tables, std::vector<Vector> units) {
  if (auto fail = green_failure(r, tables, units)) throw VerificationError(*fail);
  GreenFunctor out;
  out.r_ = r;
  for (std::size_t k = 0; k < tables.size(); ++k) {
    tables[k] = r.level(static_cast<int>(k)).normalize_map(tables[k]);
    units[k] = r.level(static_cast<int>(k)).normalize(units[k]);
  }
  out.tables_ = std::move(tables);
  out.units_ = std::move(units);
  return out;
}

GreenFunctor green_from_mult(const BoxProduct& rr, const MackeyMorphism& mult, const MackeyMorphism& unit) {
  const GroupPtr& gp = rr.group();
  const FiniteGroup& g = *gp;
  const MackeyFunctor& r = mult.target();
  if (auto fail = morphism_failure(rr.object(), r, mult.components())) throw VerificationError("mult: " + *fail);
  if (auto fail = morphism_failure(unit.source(), r, unit.components())) throw VerificationError("unit: " + *fail);
  std::vector<Matrix> tables;
  std::vector<Vector> units;
  for (int k = 0; k < static_cast<int>(g.class_count()); ++k) {
    const std::size_t n = r.level(k).ngens();
    Matrix t(n, n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        t.set_column(a * n + b, mult.at(k) * rr.pair(g.identity(k), unit_vector(n, a), unit_vector(n, b)));
    tables.push_back(std::move(t));
    units.push_back(unit.at(k).column(identity_code_position(gp, k)));
  }
  GreenFunctor out = green_from_levelwise(r, std::move(tables), std::move(units));
  if (!(out.mult(rr) == mult)) throw VerificationError("multiplication is not determined by its levelwise products");
  return out;
}

GreenFunctor burnside_green(const GroupPtr& g) {
  GSet pt = GSet::point(g);
  MackeyFunctor r = representable(pt);
  std::vector<Matrix> tables;
  std::vector<Vector> units;
  for (int k = 0; k < static_cast<int>(g->class_count()); ++k) {
    GSet ok = GSet::orbit(g, k);
    ProductResult kk = product(ok, ok);
    std::vector<int> diag(ok.size());
    for (std::size_t c = 0; c < ok.size(); ++c) diag[c] = static_cast<int>(c * ok.size() + c);
    BurnsideElement delta = span_canonicalize(GMap(ok, kk.set, diag), GMap::identity(ok));
    auto basis = hom_basis(pt, ok);
    const std::size_t n = basis.size();
    Matrix t(n, n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        BurnsideElement e =
            compose(delta, tensor(BurnsideElement::basis(pt, ok, basis[a]), BurnsideElement::basis(pt, ok, basis[b])));
        t.set_column(a * n + b, e.coordinates());
      }
    tables.push_back(std::move(t));
    units.push_back(unit_vector(n, identity_code_position(g, k)));
  }
  return green_from_levelwise(r, std::move(tables), std::move(units));
}

GreenFunctor fixed_point_green(const GroupPtr& gp, const Integer& modulus) {
  const FiniteGroup& g = *gp;
  AbGroup level(std::vector<Integer>{modulus});
  MackeyData data;
  data.levels.assign(g.class_count(), level);
  for (const OrbitMap& phi : g.generating_maps()) {
    Matrix r(1, 1), t(1, 1);
    r(0, 0) = 1;
    t(0, 0) = static_cast<unsigned long>(popcount(g.rep(phi.target)) / popcount(g.rep(phi.source)));
    data.res.push_back(level.normalize_map(r));
    data.tr.push_back(level.normalize_map(t));
  }
  MackeyFunctor r =
      MackeyFunctor::from_generators(gp, std::move(data), {Validation::kStructural, 0, 1});
  std::vector<Matrix> tables(g.class_count(), Matrix::identity(1));
  std::vector<Vector> units(g.class_count(), unit_vector(1, 0));
  return green_from_levelwise(r, std::move(tables), std::move(units));
}

// ---------------------------------------------------------------------------

Vector GreenModule::act(int k, const Vector& r, const Vector& m) const {
  return m_.level(k).normalize(bilinear(tables_[k], r, m));
}

MackeyMorphism GreenModule::action(const BoxProduct& rm) const {
  const FiniteGroup& g = *m_.group();
  std::vector<Matrix> comps;
  for (int j = 0; j < static_cast<int>(g.class_count()); ++j) {
    Matrix raw(m_.level(j).ngens(), rm.raw_size(j));
    for (const OrbitMap& psi : g.all_maps()) {
      if (psi.target != j) continue;
      raw.set_block(0, rm.block_offset(psi), m_.tr(psi) * tables_[psi.source]);
    }
    comps.push_back(raw * rm.from_level(j));
  }
  return MackeyMorphism(rm.object(), m_, std::move(comps), true);
}

std::optional<std::string> module_failure(const GreenFunctor& r, const MackeyFunctor& m,
                                          const std::vector<Matrix>& tables) {
  const FiniteGroup& g = *m.group();
  if (r.group() != m.group()) return "ring and module live over different groups";
  const int nc = static_cast<int>(g.class_count());
  if (static_cast<int>(tables.size()) != nc) return "expected one action table per level";
  const MackeyFunctor& ru = r.underlying();
  auto act = [&](int k, const Vector& x, const Vector& y) {
    return m.level(k).normalize(bilinear(tables[k], x, y));
  };
  auto cell = [](std::size_t a, std::size_t b) { return "(" + std::to_string(a) + ", " + std::to_string(b) + ")"; };
  for (int k = 0; k < nc; ++k) {
    const AbGroup& rk = ru.level(k);
    const AbGroup& mk = m.level(k);
    const std::size_t nr = rk.ngens(), nm = mk.ngens();
    if (tables[k].rows() != nm || tables[k].cols() != nr * nm)
      return "action table at level " + label(g, k) + " has the wrong shape";
    for (std::size_t a = 0; a < nr; ++a)
      for (std::size_t b = 0; b < nm; ++b) {
        Vector v = tables[k].column(a * nm + b);
        if ((rk.modulus(a) != 0 && !mk.is_zero(rk.modulus(a) * v)) ||
            (mk.modulus(b) != 0 && !mk.is_zero(mk.modulus(b) * v)))
          return "action at level " + label(g, k) + " does not respect torsion at " + cell(a, b);
      }
    for (std::size_t b = 0; b < nm; ++b) {
      Vector eb = unit_vector(nm, b);
      if (!mk.equal(act(k, r.unit(k), eb), eb)) return "unit acts nontrivially at level " + label(g, k);
      for (std::size_t a = 0; a < nr; ++a)
        for (std::size_t a2 = 0; a2 < nr; ++a2) {
          Vector ea = unit_vector(nr, a), ea2 = unit_vector(nr, a2);
          if (!mk.equal(act(k, r.multiply(k, ea, ea2), eb), act(k, ea, act(k, ea2, eb))))
            return "action is not associative at level " + label(g, k) + " on ring generators " + cell(a, a2) +
                   " and module generator " + std::to_string(b);
        }
    }
  }
  for (const OrbitMap& phi : g.generating_maps()) {
    const int s = phi.source, t = phi.target;
    const std::string where = label(g, s) + "->" + label(g, t) + "@" + std::to_string(phi.point);
    const std::size_t nrs = ru.level(s).ngens(), nrt = ru.level(t).ngens();
    const std::size_t nms = m.level(s).ngens(), nmt = m.level(t).ngens();
    for (std::size_t a = 0; a < nrt; ++a)
      for (std::size_t b = 0; b < nmt; ++b) {
        Vector x = unit_vector(nrt, a), y = unit_vector(nmt, b);
        if (!m.level(s).equal(m.res(phi) * act(t, x, y), act(s, ru.res(phi) * x, m.res(phi) * y)))
          return "res along " + where + " does not commute with the action on " + cell(a, b);
      }
    for (std::size_t a = 0; a < nrs; ++a)
      for (std::size_t b = 0; b < nmt; ++b) {
        Vector x = unit_vector(nrs, a), y = unit_vector(nmt, b);
        if (!m.level(t).equal(m.tr(phi) * act(s, x, m.res(phi) * y), act(t, ru.tr(phi) * x, y)))
          return "Frobenius reciprocity fails along " + where + " on " + cell(a, b);
      }
    for (std::size_t a = 0; a < nrt; ++a)
      for (std::size_t b = 0; b < nms; ++b) {
        Vector x = unit_vector(nrt, a), y = unit_vector(nms, b);
        if (!m.level(t).equal(m.tr(phi) * act(s, ru.res(phi) * x, y), act(t, x, m.tr(phi) * y)))
          return "Frobenius reciprocity fails along " + where + " on " + cell(a, b);
      }
  }
  return std::nullopt;
}

GreenModule module_from_levelwise(const GreenFunctor& r, const MackeyFunctor& m, std::vector<Matrix> tables) {
  if (auto fail = module_failure(r, m, tables)) throw VerificationError(*fail);
  GreenModule out;
  out.r_ = r;
  out.m_ = m;
  for (std::size_t k = 0; k < tables.size(); ++k) tables[k] = m.level(static_cast<int>(k)).normalize_map(tables[k]);
  out.tables_ = std::move(tables);
  return out;
}

GreenModule module_from_action(const GreenFunctor& r, const BoxProduct& rm, const MackeyMorphism& action) {
  const FiniteGroup& g = *r.group();
  const MackeyFunctor& m = action.target();
  if (auto fail = morphism_failure(rm.object(), m, action.components())) throw VerificationError("action: " + *fail);
  std::vector<Matrix> tables;
  for (int k = 0; k < static_cast<int>(g.class_count()); ++k) {
    const std::size_t nr = r.underlying().level(k).ngens(), nm = m.level(k).ngens();
    Matrix t(nm, nr * nm);
    for (std::size_t a = 0; a < nr; ++a)
      for (std::size_t b = 0; b < nm; ++b)
        t.set_column(a * nm + b, action.at(k) * rm.pair(g.identity(k), unit_vector(nr, a), unit_vector(nm, b)));
    tables.push_back(std::move(t));
  }
  GreenModule out = module_from_levelwise(r, m, std::move(tables));
  if (!(out.action(rm) == action)) throw VerificationError("action is not determined by its levelwise tables");
  return out;
}

GreenModule regular_module(const GreenFunctor& r) { return module_from_levelwise(r, r.underlying(), r.tables()); }

GreenModule burnside_module(const GreenFunctor& burnside, const MackeyFunctor& m) {
  const GroupPtr& gp = m.group();
  GSet pt = GSet::point(gp);
  std::vector<Matrix> tables;
  for (int k = 0; k < static_cast<int>(gp->class_count()); ++k) {
    GSet ok = GSet::orbit(gp, k);
    auto codes = hom_basis(pt, ok);
    if (codes.size() != burnside.underlying().level(k).ngens())
      throw std::invalid_argument("burnside_module: ring is not the Burnside Green functor");
    const std::size_t nm = m.level(k).ngens();
    Matrix t(nm, codes.size() * nm);
    for (std::size_t a = 0; a < codes.size(); ++a) {
      OrbitMap phi = ok.map_from_orbit(codes[a].cls, codes[a].point).second;
      t.set_block(0, a * nm, m.tr(phi) * m.res(phi));
    }
    tables.push_back(std::move(t));
  }
  return module_from_levelwise(burnside, m, std::move(tables));
}

GreenModule scalar_module(const GreenFunctor& r, const MackeyFunctor& m) {
  std::vector<Matrix> tables;
  for (int k = 0; k < static_cast<int>(m.level_count()); ++k) {
    if (r.underlying().level(k).ngens() != 1) throw std::invalid_argument("scalar_module: ring levels must be cyclic");
    tables.push_back(Matrix::identity(m.level(k).ngens()));
  }
  return module_from_levelwise(r, m, std::move(tables));
}

}  // namespace mackeykit
