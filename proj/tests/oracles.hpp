#pragma once

// Independent recomputations used by the unit tests and the acceptance run.

#include <map>
#include <optional>
#include <set>
#include <string>

#include "support.hpp"

namespace mktest {

// Enumeration oracles for subgroup and coset counts.

// Every subset closed under multiplication, by exhaustion.
inline std::vector<Subset> brute_subgroups(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<Subset> out;
  for (Subset s = 1; s < (Subset{1} << n); ++s) {
    if (!contains(s, 0)) continue;
    bool closed = true;
    for (Element a : members(s))
      for (Element b : members(s))
        if (!contains(s, g.mul(a, b))) closed = false;
    if (closed) out.push_back(s);
  }
  return out;
}

inline std::size_t brute_class_count(const FiniteGroup& g, const std::vector<Subset>& subs) {
  std::set<Subset> seen;
  std::size_t classes = 0;
  for (Subset s : subs) {
    if (seen.count(s)) continue;
    ++classes;
    for (Element x = 0; x < static_cast<Element>(g.order()); ++x) {
      Subset c = 0;
      for (Element h : members(s)) c |= Subset{1} << g.conj(x, h);
      seen.insert(c);
    }
  }
  return classes;
}

inline std::size_t brute_double_cosets(const FiniteGroup& g, Subset h, Subset k) {
  std::set<Subset> cosets;
  for (Element x = 0; x < static_cast<Element>(g.order()); ++x) {
    Subset c = 0;
    for (Element a : members(h))
      for (Element b : members(k)) c |= Subset{1} << g.mul(g.mul(a, x), b);
    cosets.insert(c);
  }
  return cosets.size();
}

inline std::size_t brute_mark(const FiniteGroup& g, int i, int j) {
  const Subset hi = g.rep(i), hj = g.rep(j);
  std::set<Subset> fixed;
  for (Element a = 0; a < static_cast<Element>(g.order()); ++a) {
    Subset coset = 0;
    for (Element b : members(hi)) coset |= Subset{1} << g.mul(a, b);
    bool ok = true;
    for (Element h : members(hj))
      if (!contains(hi, g.mul(g.inv(a), g.mul(h, a)))) ok = false;
    if (ok) fixed.insert(coset);
  }
  return fixed.size();
}

/// FP(V) recomputed as equivariant functions on cosets, Hom_G(Z[G/H], V):
/// compares level groups, and checks restriction (precomposition) and
/// transfer (summing over fibres) on every orbit map, through evaluation at
/// the base coset.
inline std::optional<std::string> fixed_point_kan_failure(const Representation& v) {
  const GroupPtr& gp = v.group;
  const FiniteGroup& g = *gp;
  MackeyFunctor fp = fixed_point_mackey(v);
  const std::size_t d = v.module.ngens();
  std::vector<SubgroupEmbedding> fixed;
  for (int k = 0; k < static_cast<int>(g.class_count()); ++k) {
    const CosetSpace& cs = g.cosets(k);
    const std::size_t n = cs.size;
    // f -> (x f(c) - f(x c))_{x, c}
    Matrix eq(d * n * g.order(), d * n);
    for (Element x = 0; x < static_cast<Element>(g.order()); ++x)
      for (std::size_t c = 0; c < n; ++c) {
        const std::size_t row = (static_cast<std::size_t>(x) * n + c) * d;
        eq.add_block(row, c * d, v.action[x]);
        eq.add_block(row, static_cast<std::size_t>(cs.act(x, static_cast<int>(c))) * d, Matrix::identity(d), -1);
      }
    std::vector<AbGroup> src(n, v.module), dst(n * g.order(), v.module);
    SubgroupEmbedding functions = kernel(eq, direct_sum(src), direct_sum(dst));
    if (!isomorphic(functions.group(), fp.level(k)))
      return "level " + g.subgroup_class(k).label + ": " + functions.group().to_string() + " vs " + fp.level(k).to_string();
    fixed.push_back(fixed_submodule(v, g.rep(k)));
  }
  for (const OrbitMap& phi : g.all_maps()) {
    const std::string where = g.subgroup_class(phi.source).label + "->" + g.subgroup_class(phi.target).label;
    const auto& fs = fixed[phi.source];
    const auto& ft = fixed[phi.target];
    const CosetSpace& csrc = g.cosets(phi.source);
    GMap theta = orbit_gmap(gp, phi);
    for (std::size_t j = 0; j < ft.group().ngens(); ++j) {
      // restriction: (f o theta)(eK) = f(theta(eK))
      Vector w = ft.inclusion().column(j);
      Vector expect = v.action[g.cosets(phi.target).rep[theta(0)]] * w;
      if (!v.module.equal(fs.inclusion() * fp.res(phi).column(j), expect)) return "res along " + where;
    }
    for (std::size_t j = 0; j < fs.group().ngens(); ++j) {
      // transfer: (tr f)(eH) = sum of f(c) over cosets c of K above eH
      Vector w = fs.inclusion().column(j);
      Vector expect = zero_vector(d);
      for (std::size_t c = 0; c < csrc.size; ++c)
        if (theta(static_cast<int>(c)) == 0) expect = expect + v.action[csrc.rep[c]] * w;
      if (!v.module.equal(ft.inclusion() * fp.tr(phi).column(j), expect)) return "tr along " + where;
    }
  }
  return std::nullopt;
}

/// Hom_Z(A, B) for diagonal groups, one cyclic summand per entry.
class HomZ {
 public:
  HomZ(const AbGroup& a, const AbGroup& b) : a_(a), b_(b) {
    std::vector<Integer> moduli;
    for (std::size_t i = 0; i < b.ngens(); ++i)
      for (std::size_t j = 0; j < a.ngens(); ++j) {
        const Integer& ai = a.modulus(j);
        const Integer& bi = b.modulus(i);
        if (bi == 0 && ai != 0) continue;  // Hom(Z/a, Z) = 0
        Integer gcd;
        mpz_gcd(gcd.get_mpz_t(), ai.get_mpz_t(), bi.get_mpz_t());
        if (gcd == 1) continue;
        entries_.push_back({i, j, bi == 0 ? Integer(1) : Integer(bi / gcd)});
        moduli.push_back(bi == 0 ? Integer(0) : gcd);
      }
    group_ = AbGroup(moduli);
  }
  const AbGroup& group() const { return group_; }
  Matrix to_matrix(const Vector& t) const {
    Matrix f(b_.ngens(), a_.ngens());
    for (std::size_t e = 0; e < entries_.size(); ++e) f(entries_[e].i, entries_[e].j) = entries_[e].scale * t[e];
    return f;
  }
  Vector coordinates(const Matrix& f) const {
    Matrix n = b_.normalize_map(f);
    Vector t;
    for (const auto& e : entries_) {
      if (n(e.i, e.j) % e.scale != 0) throw std::logic_error("not a homomorphism");
      t.push_back(n(e.i, e.j) / e.scale);
    }
    return group_.normalize(t);
  }

 private:
  struct Entry {
    std::size_t i, j;
    Integer scale;
  };
  AbGroup a_, b_, group_;
  std::vector<Entry> entries_;
};

struct BorelCheck {
  AbGroup mackey_hom;  // hom(M, FP(V))
  AbGroup module_hom;  // Hom_G(M(G/e), V)
  bool iso = false;    // restriction to G/e
};

/// hom(M, FP(V)) against G-equivariant maps M(G/e) -> V, with G acting on
/// M(G/e) through the automorphisms of G/e.  V must be a module on which g
/// and g^-1 act alike (trivial or sign actions).
inline BorelCheck borel_check(const MackeyFunctor& m, const Representation& v) {
  const GroupPtr& gp = m.group();
  const FiniteGroup& g = *gp;
  MackeyFunctor fp = fixed_point_mackey(v);
  HomGroup hom(m, fp);
  HomZ hz(m.level(0), v.module);
  const std::size_t n = hz.group().ngens();
  std::vector<AbGroup> copies(g.order(), hz.group());
  Matrix eq(n * g.order(), n);
  for (std::size_t e = 0; e < n; ++e) {
    Matrix f = hz.to_matrix(unit_vector(n, e));
    for (Element x = 0; x < static_cast<Element>(g.order()); ++x) {
      Matrix diff = f * m.res(g.automorphism(0, x)) - v.action[x] * f;
      Vector c = hz.coordinates(diff);
      for (std::size_t r = 0; r < n; ++r) eq(static_cast<std::size_t>(x) * n + r, e) = c[r];
    }
  }
  SubgroupEmbedding equivariant = kernel(eq, hz.group(), direct_sum(copies));
  Matrix incl = fixed_submodule(v, g.rep(0)).inclusion();
  Matrix to(equivariant.group().ngens(), hom.group().ngens());
  for (std::size_t c = 0; c < hom.group().ngens(); ++c) {
    MackeyMorphism f = hom.morphism(unit_vector(hom.group().ngens(), c));
    to.set_column(c, equivariant.coordinates(hz.coordinates(incl * f.at(0))));
  }
  return {hom.group(), equivariant.group(), is_isomorphism(to, hom.group(), equivariant.group())};
}

/// Integer row echelon basis of a lattice, filled one sparse vector at a
/// time, so large redundant relation sets stay small.
class SparseLattice {
 public:
  using Row = std::map<std::size_t, Integer>;
  void insert(Row v) {
    while (!v.empty()) {
      const std::size_t p = v.begin()->first;
      auto it = rows_.find(p);
      if (it == rows_.end()) {
        if (v.begin()->second < 0) scale(v, -1);
        rows_.emplace(p, std::move(v));
        return;
      }
      Row& r = it->second;
      const Integer a = v.begin()->second, b = r.begin()->second;
      if (a % b == 0) {
        axpy(v, -(a / b), r);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Row pivot;
      axpy(pivot, s, v);
      axpy(pivot, t, r);
      Row rest;
      axpy(rest, b / g, v);
      axpy(rest, -(a / g), r);
      r = std::move(pivot);
      v = std::move(rest);
    }
  }
  Matrix columns(std::size_t n) const {
    Matrix m(n, rows_.size());
    std::size_t c = 0;
    for (const auto& [p, row] : rows_) {
      for (const auto& [i, x] : row) m(i, c) = x;
      ++c;
    }
    return m;
  }

 private:
  static void scale(Row& v, const Integer& a) {
    for (auto& [i, x] : v) x *= a;
  }
  static void axpy(Row& y, const Integer& a, const Row& x) {
    for (const auto& [i, xi] : x) {
      Integer& yi = y[i];
      yi += a * xi;
      if (yi == 0) y.erase(i);
    }
  }
  std::map<std::size_t, Row> rows_;
};

/// (M box N)(G/H_j) presented directly as the coend over orbits of
/// M(U) (x) N(V) (x) A(U x V, G/H_j).
inline AbGroup coend_box_level(const MackeyFunctor& m, const MackeyFunctor& n, int j) {
  const GroupPtr& gp = m.group();
  const int nc = static_cast<int>(gp->class_count());
  std::vector<GSet> orb = orbits(gp);
  GSet target = orb[j];
  struct Block {
    std::size_t offset;
    GSet prod;
    std::vector<SpanCode> w;
  };
  std::vector<Block> blocks;
  std::size_t total = 0;
  for (int k = 0; k < nc; ++k)
    for (int l = 0; l < nc; ++l) {
      Block b{total, product_set(orb[k], orb[l]), {}};
      b.w = hom_basis(b.prod, target);
      total += m.level(k).ngens() * n.level(l).ngens() * b.w.size();
      blocks.push_back(std::move(b));
    }
  auto index = [&](int k, int l, std::size_t a, std::size_t b, std::size_t w) {
    const Block& bl = blocks[static_cast<std::size_t>(k * nc + l)];
    return bl.offset + (a * n.level(l).ngens() + b) * bl.w.size() + w;
  };
  SparseLattice rels;
  for (int k = 0; k < nc; ++k)
    for (int l = 0; l < nc; ++l) {
      const std::size_t na = m.level(k).ngens(), nb = n.level(l).ngens(), nw = blocks[static_cast<std::size_t>(k * nc + l)].w.size();
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b)
          for (std::size_t w = 0; w < nw; ++w)
            for (const Integer& mod : {m.level(k).modulus(a), n.level(l).modulus(b)})
              if (mod != 0) {
                rels.insert({{index(k, l, a, b, w), mod}});
              }
    }
  // (M(f) a', b, w) = (a', b, w o (f x 1)) and the mirror image.  The
  // relation is compatible with composition and sums of f, so restrictions
  // and transfers along generating maps suffice.
  std::vector<BurnsideElement> spans;
  for (const OrbitMap& phi : gp->generating_maps()) {
    spans.push_back(transfer_span(gp, phi));
    spans.push_back(restriction_span(gp, phi));
  }
  auto class_of_orbit = [&](const GSet& o) {
    for (int c = 0; c < nc; ++c)
      if (orb[c] == o) return c;
    throw std::logic_error("not an orbit");
  };
  for (int side = 0; side < 2; ++side)
    for (const BurnsideElement& f : spans) {
      const int k2 = class_of_orbit(f.source()), k = class_of_orbit(f.target());
      const MackeyFunctor& moving = side == 0 ? m : n;
      const MackeyFunctor& other = side == 0 ? n : m;
      Matrix mf = moving.level(k).normalize_map(moving.eval_span(f));
      for (int l = 0; l < nc; ++l) {
        const Block& big = side == 0 ? blocks[static_cast<std::size_t>(k * nc + l)] : blocks[static_cast<std::size_t>(l * nc + k)];
        const Block& small = side == 0 ? blocks[static_cast<std::size_t>(k2 * nc + l)] : blocks[static_cast<std::size_t>(l * nc + k2)];
        BurnsideElement fx = side == 0 ? tensor(f, BurnsideElement::identity(orb[l])) : tensor(BurnsideElement::identity(orb[l]), f);
        for (std::size_t w = 0; w < big.w.size(); ++w) {
          Vector wf = compose(BurnsideElement::basis(big.prod, target, big.w[w]), fx).coordinates();
          for (std::size_t a2 = 0; a2 < moving.level(k2).ngens(); ++a2)
            for (std::size_t b = 0; b < other.level(l).ngens(); ++b) {
              SparseLattice::Row r;
              for (std::size_t a = 0; a < moving.level(k).ngens(); ++a)
                if (mf(a, a2) != 0) r[side == 0 ? index(k, l, a, b, w) : index(l, k, b, a, w)] += mf(a, a2);
              for (std::size_t w2 = 0; w2 < small.w.size(); ++w2)
                if (wf[w2] != 0) r[side == 0 ? index(k2, l, a2, b, w2) : index(l, k2, b, a2, w2)] -= wf[w2];
              std::erase_if(r, [](const auto& e) { return e.second == 0; });
              rels.insert(std::move(r));
            }
        }
      }
    }
  return present(total, rels.columns(total)).group;
}

}  // namespace mktest
