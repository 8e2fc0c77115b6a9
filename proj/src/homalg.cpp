#include "mackeykit/homalg.hpp"

namespace mackeykit {

namespace {

Vector slice(const Vector& v, std::size_t begin, std::size_t len) {
  return Vector(v.begin() + static_cast<std::ptrdiff_t>(begin), v.begin() + static_cast<std::ptrdiff_t>(begin + len));
}

MackeyFunctor sum_or_zero(const GroupPtr& g, const std::vector<MackeyFunctor>& parts) {
  if (parts.empty()) return MackeyFunctor::zero(g);
  if (parts.size() == 1) return parts[0];
  return direct_sum(parts).object;
}

// Matrix of m -> r . m on M(G/H_l).
Matrix action_matrix(const GreenModule& m, int l, const Vector& r) {
  const std::size_t n = m.underlying().level(l).ngens();
  Matrix out(n, n);
  for (std::size_t x = 0; x < r.size(); ++x) {
    if (r[x] == 0) continue;
    out.add_block(0, 0, m.table(l).block(0, x * n, n, n), r[x]);
  }
  return out;
}

// Level j of the map from the free module on one orbit G/H_k sending the
// generator to x in M(G/H_k).
Matrix free_block(const GreenModule& m, int k, const Vector& x, int j) {
  const GroupPtr& gp = m.underlying().group();
  const MackeyFunctor& r = m.ring().underlying();
  const MackeyFunctor& mm = m.underlying();
  GSet ok = GSet::orbit(gp, k), oj = GSet::orbit(gp, j);
  const int nj = static_cast<int>(oj.size());
  GSet t = product_set(ok, oj);
  auto roffs = r.offsets(t);
  Matrix block(mm.level(j).ngens(), roffs.back());
  for (std::size_t i = 0; i < t.orbit_count(); ++i) {
    const auto& o = t.orbits()[i];
    const int p0 = o.points[0];
    OrbitMap phi1 = ok.map_from_orbit(o.cls, p0 / nj).second;
    OrbitMap phi2 = oj.map_from_orbit(o.cls, p0 % nj).second;
    Vector y = mm.res(phi1) * x;
    const std::size_t nl = r.level(o.cls).ngens();
    for (std::size_t e = 0; e < nl; ++e) block.set_column(roffs[i] + e, mm.tr(phi2) * m.act(o.cls, unit_vector(nl, e), y));
  }
  return mm.level(j).normalize_map(block);
}

Matrix free_component(const GreenModule& m, const std::vector<int>& classes, const std::vector<Vector>& elements,
                      int j) {
  Matrix out(m.underlying().level(j).ngens(), 0);
  for (std::size_t a = 0; a < classes.size(); ++a) out = Matrix::hstack(out, free_block(m, classes[a], elements[a], j));
  return out;
}

}  // namespace

FreeModule free_module(const GreenFunctor& r, const std::vector<int>& classes) {
  const GroupPtr& gp = r.group();
  const int nc = static_cast<int>(gp->class_count());
  FreeModule f;
  f.ring = r;
  f.generators = classes;
  std::vector<MackeyFunctor> parts;
  for (int k : classes) parts.push_back(internal_hom_rep(GSet::orbit(gp, k), r.underlying()));
  MackeyFunctor u = sum_or_zero(gp, parts);
  f.offsets.assign(nc, {});
  std::vector<Matrix> tables;
  for (int j = 0; j < nc; ++j) {
    GSet oj = GSet::orbit(gp, j);
    const int nj = static_cast<int>(oj.size());
    std::size_t acc = 0;
    for (const auto& p : parts) {
      f.offsets[j].push_back(acc);
      acc += p.level(j).ngens();
    }
    f.offsets[j].push_back(acc);
    const std::size_t nf = acc, nr = r.underlying().level(j).ngens();
    Matrix t(nf, nr * nf);
    for (std::size_t a = 0; a < classes.size(); ++a) {
      GSet ts = product_set(GSet::orbit(gp, classes[a]), oj);
      auto roffs = r.underlying().offsets(ts);
      for (std::size_t i = 0; i < ts.orbit_count(); ++i) {
        const auto& o = ts.orbits()[i];
        OrbitMap phi2 = oj.map_from_orbit(o.cls, o.points[0] % nj).second;
        const std::size_t nl = r.underlying().level(o.cls).ngens(), base = f.offsets[j][a] + roffs[i];
        for (std::size_t x = 0; x < nr; ++x) {
          Vector rx = r.underlying().res(phi2) * unit_vector(nr, x);
          for (std::size_t y = 0; y < nl; ++y) {
            Vector prod = r.multiply(o.cls, rx, unit_vector(nl, y));
            for (std::size_t z = 0; z < nl; ++z) t(base + z, x * nf + base + y) = prod[z];
          }
        }
      }
    }
    tables.push_back(std::move(t));
  }
  f.module = module_from_levelwise(r, u, std::move(tables));
  return f;
}

FreeModule free_module(const GreenFunctor& r, const GSet& x) {
  std::vector<int> classes;
  for (const auto& o : x.orbits()) classes.push_back(o.cls);
  return free_module(r, classes);
}

Vector free_generator(const FreeModule& f, std::size_t a) {
  const GroupPtr& gp = f.ring.group();
  const int k = f.generators[a];
  GSet ok = GSet::orbit(gp, k);
  GSet t = product_set(ok, ok);
  auto roffs = f.ring.underlying().offsets(t);
  const int io = t.orbit_of(0);
  Vector v = zero_vector(f.underlying().level(k).ngens());
  const Vector& u = f.ring.unit(k);
  for (std::size_t i = 0; i < u.size(); ++i) v[f.offset(k, a) + roffs[io] + i] = u[i];
  return v;
}

MackeyMorphism free_module_map(const FreeModule& f, const GreenModule& m, const std::vector<Vector>& elements) {
  if (elements.size() != f.generators.size()) throw std::invalid_argument("free_module_map: one element per generator");
  std::vector<Matrix> comps;
  for (int j = 0; j < static_cast<int>(f.ring.group()->class_count()); ++j)
    comps.push_back(free_component(m, f.generators, elements, j));
  return MackeyMorphism(f.underlying(), m.underlying(), std::move(comps), true);
}

ModuleHom module_hom(const GreenModule& source, const GreenModule& target) {
  HomGroup h(source.underlying(), target.underlying());
  const FiniteGroup& g = *source.underlying().group();
  const MackeyFunctor& r = source.ring().underlying();
  std::vector<AbGroup> copies;
  for (int k = 0; k < static_cast<int>(g.class_count()); ++k)
    for (std::size_t c = 0; c < r.level(k).ngens() * source.underlying().level(k).ngens(); ++c)
      copies.push_back(target.underlying().level(k));
  AbGroup defect_group = direct_sum(copies);
  Matrix d(defect_group.ngens(), h.group().ngens());
  for (std::size_t c = 0; c < h.group().ngens(); ++c) {
    MackeyMorphism f = h.morphism(unit_vector(h.group().ngens(), c));
    Vector col;
    for (int k = 0; k < static_cast<int>(g.class_count()); ++k) {
      const std::size_t nr = r.level(k).ngens(), ns = source.underlying().level(k).ngens();
      for (std::size_t a = 0; a < nr; ++a)
        for (std::size_t b = 0; b < ns; ++b) {
          Vector ea = unit_vector(nr, a), eb = unit_vector(ns, b);
          Vector v = f.at(k) * source.act(k, ea, eb) - target.act(k, ea, f.at(k) * eb);
          col.insert(col.end(), v.begin(), v.end());
        }
    }
    d.set_column(c, col);
  }
  return {h, kernel(d, h.group(), defect_group)};
}

FreeAdjunction free_adjunction(const FreeModule& f, const GreenModule& m) {
  ModuleHom hom = module_hom(f.module, m);
  std::vector<AbGroup> parts;
  for (int k : f.generators) parts.push_back(m.underlying().level(k));
  AbGroup value = direct_sum(parts);
  Matrix to(hom.group().ngens(), value.ngens());
  std::size_t col = 0;
  for (std::size_t a = 0; a < f.generators.size(); ++a) {
    const std::size_t n = m.underlying().level(f.generators[a]).ngens();
    for (std::size_t i = 0; i < n; ++i, ++col) {
      std::vector<Vector> elements;
      for (std::size_t b = 0; b < f.generators.size(); ++b)
        elements.push_back(b == a ? unit_vector(n, i) : zero_vector(m.underlying().level(f.generators[b]).ngens()));
      Vector c = hom.mackey.coordinates(free_module_map(f, m, elements));
      to.set_column(col, hom.sub.coordinates(c));
    }
  }
  FreeAdjunction out{hom, value, to, false};
  out.is_iso = is_isomorphism(to, value, hom.group());
  return out;
}

Cover cover(const GreenModule& m, CoverOrder order) {
  const int nc = static_cast<int>(m.underlying().level_count());
  std::vector<int> classes;
  std::vector<Vector> elements;
  for (int step = 0; step < nc; ++step) {
    const int k = order == CoverOrder::kTopDown ? nc - 1 - step : step;
    const AbGroup& mk = m.underlying().level(k);
    Matrix img = free_component(m, classes, elements, k);
    std::optional<SubgroupEmbedding> sub;
    for (std::size_t i = 0; i < mk.ngens(); ++i) {
      Vector e = unit_vector(mk.ngens(), i);
      if (!sub) sub.emplace(mk, img);
      if (sub->contains(e)) continue;
      classes.push_back(k);
      elements.push_back(e);
      img = Matrix::hstack(img, free_block(m, k, e, k));
      sub.reset();
    }
  }
  // A transfer picked high up is often generated by a later, lower generator;
  // dropping those keeps free modules free of spurious syzygies.
  for (std::size_t i = 0; i < classes.size();) {
    std::vector<int> rest_classes = classes;
    std::vector<Vector> rest_elements = elements;
    rest_classes.erase(rest_classes.begin() + static_cast<std::ptrdiff_t>(i));
    rest_elements.erase(rest_elements.begin() + static_cast<std::ptrdiff_t>(i));
    const int k = classes[i];
    SubgroupEmbedding sub(m.underlying().level(k), free_component(m, rest_classes, rest_elements, k));
    if (sub.contains(elements[i])) {
      classes = std::move(rest_classes);
      elements = std::move(rest_elements);
    } else {
      ++i;
    }
  }
  FreeModule f = free_module(m.ring(), classes);
  MackeyMorphism map = free_module_map(f, m, elements);
  return {f, elements, map};
}

GreenModule restrict_module(const GreenModule& m, const MackeyMorphism& inclusion) {
  const MackeyFunctor& k = inclusion.source();
  const MackeyFunctor& r = m.ring().underlying();
  std::vector<Matrix> tables;
  for (int l = 0; l < static_cast<int>(k.level_count()); ++l) {
    const std::size_t nr = r.level(l).ngens(), nk = k.level(l).ngens();
    Matrix t(nk, nr * nk);
    IntegerSolver solver(Matrix::hstack(inclusion.at(l), m.underlying().level(l).relations()));
    for (std::size_t a = 0; a < nr; ++a)
      for (std::size_t b = 0; b < nk; ++b) {
        Vector v = m.act(l, unit_vector(nr, a), inclusion.at(l).column(b));
        auto x = solver.solve(v);
        if (!x) throw std::logic_error("restrict_module: not a sub-module");
        x->resize(nk);
        t.set_column(a * nk + b, *x);
      }
    tables.push_back(std::move(t));
  }
  return module_from_levelwise(m.ring(), k, std::move(tables));
}

FreeResolution resolution(const GreenModule& n, int length, CoverOrder order) {
  FreeResolution res;
  res.target = n;
  Cover c = cover(n, order);
  res.modules.push_back(c.free);
  res.images.push_back(c.elements);
  res.augmentation = c.map;
  SubobjectResult ker = kernel(c.map);
  for (int p = 1; p <= length; ++p) {
    if (ker.object.is_zero()) break;
    GreenModule kmod = restrict_module(res.modules.back().module, ker.inclusion);
    Cover next = cover(kmod, order);
    std::vector<Vector> imgs;
    for (std::size_t a = 0; a < next.elements.size(); ++a)
      imgs.push_back(ker.inclusion.at(next.free.generators[a]) * next.elements[a]);
    res.differentials.push_back(compose(ker.inclusion, next.map));
    res.modules.push_back(next.free);
    res.images.push_back(std::move(imgs));
    ker = kernel(next.map);
  }
  res.finite = ker.object.is_zero();
  return res;
}

std::optional<std::string> resolution_failure(const FreeResolution& res) {
  const GroupPtr& gp = res.target.underlying().group();
  MackeyFunctor zero = MackeyFunctor::zero(gp);
  const int nc = static_cast<int>(gp->class_count());
  for (int k = 0; k < nc; ++k)
    if (!is_surjective(res.augmentation.at(k), res.target.underlying().level(k)))
      return "augmentation is not onto at level " + gp->subgroup_class(k).label;
  // the sequence P_len -> ... -> P_0 -> N -> 0
  std::vector<MackeyMorphism> maps{res.augmentation};
  maps.insert(maps.end(), res.differentials.begin(), res.differentials.end());
  for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
    if (!compose(maps[i], maps[i + 1]).is_zero()) return "consecutive maps do not compose to zero at P_" + std::to_string(i);
    if (!homology(maps[i + 1], maps[i]).object.is_zero()) return "not exact at P_" + std::to_string(i);
  }
  if (res.finite && !kernel(maps.back()).object.is_zero()) return "last map is not injective";
  return std::nullopt;
}

std::optional<std::string> chain_complex_failure(const ChainComplex& c) {
  if (c.differentials.size() != c.objects.size()) return "expected one differential slot per object";
  for (std::size_t p = 2; p < c.objects.size(); ++p)
    if (!compose(c.differentials[p - 1], c.differentials[p]).is_zero())
      return "d o d is nonzero from degree " + std::to_string(p);
  return std::nullopt;
}

std::vector<MackeyFunctor> chain_homology(const ChainComplex& c) {
  std::vector<MackeyFunctor> out;
  if (c.objects.empty()) return out;
  const GroupPtr& gp = c.objects[0].group();
  MackeyFunctor zero = MackeyFunctor::zero(gp);
  for (std::size_t p = 0; p < c.objects.size(); ++p) {
    MackeyMorphism in = p + 1 < c.objects.size() ? c.differentials[p + 1] : MackeyMorphism::zero(zero, c.objects[p]);
    MackeyMorphism outd = p > 0 ? c.differentials[p] : MackeyMorphism::zero(c.objects[0], zero);
    out.push_back(homology(in, outd).object);
  }
  return out;
}

ChainComplex tensor_with_resolution(const GreenModule& m, const FreeResolution& res) {
  const GroupPtr& gp = m.underlying().group();
  const FiniteGroup& g = *gp;
  const MackeyFunctor& mm = m.underlying();
  const MackeyFunctor& r = m.ring().underlying();
  const int nc = static_cast<int>(g.class_count());
  ChainComplex c;
  std::vector<std::vector<std::vector<std::size_t>>> offs;  // [p][j][a]
  for (const FreeModule& f : res.modules) {
    std::vector<MackeyFunctor> parts;
    for (int k : f.generators) parts.push_back(internal_hom_rep(GSet::orbit(gp, k), mm));
    c.objects.push_back(sum_or_zero(gp, parts));
    std::vector<std::vector<std::size_t>> o(nc);
    for (int j = 0; j < nc; ++j) {
      std::size_t acc = 0;
      for (const auto& p : parts) {
        o[j].push_back(acc);
        acc += p.level(j).ngens();
      }
      o[j].push_back(acc);
    }
    offs.push_back(std::move(o));
  }
  c.differentials.emplace_back();
  for (std::size_t p = 1; p < res.modules.size(); ++p) {
    const FreeModule& src = res.modules[p];
    const FreeModule& dst = res.modules[p - 1];
    std::vector<Matrix> comps;
    for (int j = 0; j < nc; ++j) {
      GSet z = GSet::orbit(gp, j);
      const std::size_t nz = z.size();
      Matrix comp(offs[p - 1][j].back(), offs[p][j].back());
      for (std::size_t a = 0; a < src.generators.size(); ++a) {
        GSet x = GSet::orbit(gp, src.generators[a]);
        const std::size_t nx = x.size();
        GSet xz = product_set(x, z);
        for (std::size_t b = 0; b < dst.generators.size(); ++b) {
          GSet y = GSet::orbit(gp, dst.generators[b]);
          GSet yx = product_set(y, x), yz = product_set(y, z);
          GSet t = product_set(yx, z);
          std::vector<int> to_yx(t.size()), to_xz(t.size()), to_yz(t.size());
          for (std::size_t i = 0; i < t.size(); ++i) {
            const std::size_t yxi = i / nz, zi = i % nz;
            to_yx[i] = static_cast<int>(yxi);
            to_xz[i] = static_cast<int>((yxi % nx) * nz + zi);
            to_yz[i] = static_cast<int>((yxi / nx) * nz + zi);
          }
          const std::size_t len = r.value(yx).ngens();
          Vector rho = slice(res.images[p][a], dst.offset(src.generators[a], b), len);
          if (is_zero(rho)) continue;
          Vector rt = r.pullback(GMap(t, yx, to_yx)) * rho;
          auto roffs = r.offsets(t);
          std::vector<Matrix> blocks;
          for (std::size_t i = 0; i < t.orbit_count(); ++i) {
            const int l = t.orbits()[i].cls;
            blocks.push_back(action_matrix(m, l, slice(rt, roffs[i], roffs[i + 1] - roffs[i])));
          }
          Matrix block = mm.pushforward(GMap(t, yz, to_yz)) * Matrix::block_diagonal(blocks) *
                         mm.pullback(GMap(t, xz, to_xz));
          comp.add_block(offs[p - 1][j][b], offs[p][j][a], block);
        }
      }
      comps.push_back(std::move(comp));
    }
    c.differentials.emplace_back(c.objects[p], c.objects[p - 1], std::move(comps), true);
  }
  return c;
}

TorResult tor(const GreenModule& m, const GreenModule& n, int pmax, CoverOrder order) {
  TorResult t;
  t.resolution = resolution(n, pmax + 1, order);
  t.complex = tensor_with_resolution(m, t.resolution);
  auto h = chain_homology(t.complex);
  MackeyFunctor zero = MackeyFunctor::zero(m.underlying().group());
  for (int p = 0; p <= pmax; ++p) t.groups.push_back(p < static_cast<int>(h.size()) ? h[p] : zero);
  return t;
}

RelBox rel_box(const GreenModule& m, const GreenModule& n) {
  BoxProduct box(m.underlying(), n.underlying());
  const FiniteGroup& g = *box.group();
  const MackeyFunctor& r = m.ring().underlying();
  std::vector<Matrix> gens;
  for (int k = 0; k < static_cast<int>(g.class_count()); ++k) {
    const std::size_t nr = r.level(k).ngens(), nm = m.underlying().level(k).ngens(), nn = n.underlying().level(k).ngens();
    std::vector<Vector> cols;
    for (std::size_t a = 0; a < nr; ++a)
      for (std::size_t x = 0; x < nm; ++x)
        for (std::size_t y = 0; y < nn; ++y) {
          Vector ea = unit_vector(nr, a), ex = unit_vector(nm, x), ey = unit_vector(nn, y);
          cols.push_back(box.pair(g.identity(k), m.act(k, ea, ex), ey) -
                         box.pair(g.identity(k), ex, n.act(k, ea, ey)));
        }
    gens.push_back(Matrix::from_columns(box.object().level(k).ngens(), cols));
  }
  QuotientResult q = quotient_by_elements(box.object(), gens);
  return {box, q};
}

QuotientResult rel_box_coequalizer(const GreenModule& m, const GreenModule& n) {
  const MackeyFunctor& r = m.ring().underlying();
  TripleBox tb = box_associator(m.underlying(), r, n.underlying());
  BoxProduct rm(r, m.underlying());
  MackeyMorphism right_action = compose(m.action(rm), box_comm_iso(tb.mn, rm).forward);
  BoxProduct mn(m.underlying(), n.underlying());
  MackeyMorphism first = box_map(right_action, MackeyMorphism::identity(n.underlying()), tb.mn_p, mn);
  MackeyMorphism second =
      compose(box_map(MackeyMorphism::identity(m.underlying()), n.action(tb.np), tb.m_np, mn), tb.assoc.forward);
  return cokernel(first - second);
}

IsoWitness tor0_witness(const TorResult& t, const GreenModule& m, const RelBox& rb) {
  const GroupPtr& gp = m.underlying().group();
  const FiniteGroup& g = *gp;
  const FreeResolution& res = t.resolution;
  const MackeyFunctor& c0 = t.complex.objects[0];
  const MackeyFunctor& nn = res.target.underlying();
  MackeyFunctor zero = MackeyFunctor::zero(gp);
  MackeyMorphism in = t.complex.objects.size() > 1 ? t.complex.differentials[1] : MackeyMorphism::zero(zero, c0);
  HomologyResult h0 = homology(in, MackeyMorphism::zero(c0, zero));
  std::vector<Matrix> comps;
  for (int j = 0; j < static_cast<int>(g.class_count()); ++j) {
    GSet oj = GSet::orbit(gp, j);
    const int nj = static_cast<int>(oj.size());
    Matrix w(rb.box.raw_size(j), c0.level(j).ngens());
    std::size_t base = 0;
    const FreeModule& p0 = res.modules[0];
    for (std::size_t a = 0; a < p0.generators.size(); ++a) {
      GSet ok = GSet::orbit(gp, p0.generators[a]);
      GSet ts = product_set(ok, oj);
      auto moffs = m.underlying().offsets(ts);
      for (std::size_t i = 0; i < ts.orbit_count(); ++i) {
        const auto& o = ts.orbits()[i];
        OrbitMap phi1 = ok.map_from_orbit(o.cls, o.points[0] / nj).second;
        OrbitMap phi2 = oj.map_from_orbit(o.cls, o.points[0] % nj).second;
        Vector nres = nn.res(phi1) * res.images[0][a];
        const std::size_t nl = m.underlying().level(o.cls).ngens();
        for (std::size_t e = 0; e < nl; ++e)
          w.set_column(base + moffs[i] + e, rb.box.raw_pair(phi2, unit_vector(nl, e), nres));
      }
      base += moffs.back();
    }
    Matrix to_rel = rb.quotient.projection.at(j) * rb.box.to_level(j) * w;
    if (t.complex.objects.size() > 1 &&
        !rb.object().level(j).normalize_map(to_rel * t.complex.differentials[1].at(j)).is_zero())
      throw VerificationError("Tor_0 comparison does not vanish on boundaries at level " + g.subgroup_class(j).label);
    comps.push_back(to_rel * h0.levels[j].representatives());
  }
  return make_iso_witness(MackeyMorphism(h0.object, rb.object(), std::move(comps), true));
}

}  // namespace mackeykit
