#include "mackeykit/promonoidal.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace mackeykit {

namespace {

void for_each_tuple(const std::vector<std::size_t>& radices, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  for (std::size_t r : radices)
    if (r == 0) return;
  std::vector<std::size_t> t(radices.size(), 0);
  while (true) {
    fn(t);
    std::size_t i = t.size();
    while (i > 0) {
      --i;
      if (++t[i] < radices[i]) break;
      t[i] = 0;
      if (i == 0) return;
    }
    if (t.empty()) return;
  }
}

// Splits an element along the iterated coproduct ((P_0 + P_1) + P_2) + ...
// of its source (or target).
std::vector<BurnsideElement> split(const BurnsideElement& e, const std::vector<GSet>& parts,
                                   const std::vector<GSet>& prefixes, bool source) {
  std::vector<BurnsideElement> out(parts.size());
  BurnsideElement rest = e;
  for (std::size_t i = parts.size(); i-- > 1;) {
    auto [a, b] = source ? direct_sum_decompose(rest, prefixes[i - 1], parts[i])
                         : direct_sum_decompose_target(rest, prefixes[i - 1], parts[i]);
    out[i] = b;
    rest = a;
  }
  out[0] = rest;
  return out;
}

std::vector<GSet> prefix_coproducts(const std::vector<GSet>& parts) {
  std::vector<GSet> pre;
  for (std::size_t i = 0; i < parts.size(); ++i) pre.push_back(i == 0 ? parts[0] : coproduct(pre.back(), parts[i]).set);
  return pre;
}

}  // namespace

BurnsideElement multimap_compose(const BurnsideElement& w, const std::vector<BurnsideElement>& v) {
  if (v.empty()) throw std::invalid_argument("multimap_compose: no inputs");
  BurnsideElement t = v[0];
  for (std::size_t i = 1; i < v.size(); ++i) t = tensor(t, v[i]);
  return compose(w, t);
}

CoendCheck promonoidal_check(const GroupPtr& g, const std::vector<GSet>& feet, const std::vector<int>& block,
                             int block_count, const GSet& z) {
  if (block_count < 1) throw std::invalid_argument("promonoidal_check: need at least one block");
  if (block.size() != feet.size()) throw std::invalid_argument("promonoidal_check: one block index per foot");
  for (std::size_t j = 0; j < block.size(); ++j) {
    if (block[j] < 0 || block[j] >= block_count) throw std::invalid_argument("promonoidal_check: block out of range");
    if (j > 0 && block[j] < block[j - 1]) throw std::invalid_argument("promonoidal_check: blocks must be non-decreasing");
  }
  const std::size_t ni = static_cast<std::size_t>(block_count);
  const std::size_t nc = g->class_count();
  std::vector<GSet> orbit;
  for (std::size_t k = 0; k < nc; ++k) orbit.push_back(GSet::orbit(g, static_cast<int>(k)));
  std::vector<GSet> x(ni);
  for (std::size_t i = 0; i < ni; ++i) {
    std::vector<GSet> part;
    for (std::size_t j = 0; j < feet.size(); ++j)
      if (block[j] == static_cast<int>(i)) part.push_back(feet[j]);
    x[i] = product_of(g, part);
  }
  // v-bases per slot and orbit
  std::vector<std::vector<std::vector<SpanCode>>> vb(ni, std::vector<std::vector<SpanCode>>(nc));
  for (std::size_t i = 0; i < ni; ++i)
    for (std::size_t k = 0; k < nc; ++k) vb[i][k] = hom_basis(x[i], orbit[k]);

  struct Block {
    std::vector<std::size_t> y;
    GSet prod;
    std::vector<SpanCode> w;
    std::size_t offset = 0, size = 0;
  };
  std::vector<Block> blocks;
  std::size_t ngens = 0;
  for_each_tuple(std::vector<std::size_t>(ni, nc), [&](const std::vector<std::size_t>& t) {
    Block b;
    b.y = t;
    std::vector<GSet> ys;
    for (std::size_t k : t) ys.push_back(orbit[k]);
    b.prod = product_of(g, ys);
    b.w = hom_basis(b.prod, z);
    b.size = b.w.size();
    for (std::size_t i = 0; i < ni; ++i) b.size *= vb[i][t[i]].size();
    b.offset = ngens;
    ngens += b.size;
    blocks.push_back(std::move(b));
  });
  auto block_of = [&](const std::vector<std::size_t>& t) -> const Block& {
    std::size_t idx = 0;
    for (std::size_t k : t) idx = idx * nc + k;
    return blocks[idx];
  };
  auto gen_index = [&](const Block& b, std::size_t w, const std::vector<std::size_t>& v) {
    std::size_t idx = w;
    for (std::size_t i = 0; i < ni; ++i) idx = idx * vb[i][b.y[i]].size() + v[i];
    return b.offset + idx;
  };
  auto radices_of = [&](const Block& b) {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < ni; ++i) r.push_back(vb[i][b.y[i]].size());
    return r;
  };

  GSet source = product_of(g, feet);
  const std::size_t target_rank = hom_basis(source, z).size();
  Matrix pairing(target_rank, ngens);
  for (const Block& b : blocks)
    for (std::size_t w = 0; w < b.w.size(); ++w) {
      BurnsideElement we = BurnsideElement::basis(b.prod, z, b.w[w]);
      for_each_tuple(radices_of(b), [&](const std::vector<std::size_t>& v) {
        std::vector<BurnsideElement> ve;
        for (std::size_t i = 0; i < ni; ++i) ve.push_back(BurnsideElement::basis(x[i], orbit[b.y[i]], vb[i][b.y[i]][v[i]]));
        pairing.set_column(gen_index(b, w, v), multimap_compose(we, ve).coordinates());
      });
    }

  std::vector<Vector> rels;
  for (const Block& tgt : blocks)
    for (std::size_t i = 0; i < ni; ++i)
      for (std::size_t k = 0; k < nc; ++k) {
        std::vector<std::size_t> ys = tgt.y;
        ys[i] = k;
        const Block& src = block_of(ys);
        for (const SpanCode& fc : hom_basis(orbit[k], orbit[tgt.y[i]])) {
          BurnsideElement f = BurnsideElement::basis(orbit[k], orbit[tgt.y[i]], fc);
          BurnsideElement slot;
          for (std::size_t s = 0; s < ni; ++s) {
            BurnsideElement part = s == i ? f : BurnsideElement::identity(orbit[tgt.y[s]]);
            slot = s == 0 ? part : tensor(slot, part);
          }
          // f o v_i for each basis v_i into orbit k
          std::vector<Vector> fv;
          for (const SpanCode& vc : vb[i][k])
            fv.push_back(compose(f, BurnsideElement::basis(x[i], orbit[k], vc)).coordinates());
          for (std::size_t w = 0; w < tgt.w.size(); ++w) {
            Vector wf = compose(BurnsideElement::basis(tgt.prod, z, tgt.w[w]), slot).coordinates();
            for_each_tuple(radices_of(src), [&](const std::vector<std::size_t>& v) {
              Vector rel = zero_vector(ngens);
              for (std::size_t w2 = 0; w2 < wf.size(); ++w2)
                if (wf[w2] != 0) rel[gen_index(src, w2, v)] += wf[w2];
              std::vector<std::size_t> v2 = v;
              const Vector& col = fv[v[i]];
              for (std::size_t a = 0; a < col.size(); ++a)
                if (col[a] != 0) {
                  v2[i] = a;
                  rel[gen_index(tgt, w, v2)] -= col[a];
                }
              if (!is_zero(rel)) rels.push_back(std::move(rel));
            });
          }
        }
      }

  CoendCheck out;
  out.generators = ngens;
  out.relations = rels.size();
  out.target_rank = target_rank;
  Matrix rel = Matrix::from_columns(ngens, rels);
  out.relations_vanish = (pairing * rel).is_zero();
  Presentation q = present(ngens, rel);
  out.quotient = q.group;
  if (out.relations_vanish)
    out.is_iso = is_isomorphism(pairing * q.from_group, q.group, AbGroup::free(target_rank));
  return out;
}

MultimapProductCheck multimap_product_check(const GroupPtr& g, const std::vector<std::vector<GSet>>& blocks,
                                            const std::vector<GSet>& targets) {
  if (blocks.size() != targets.size() || blocks.empty())
    throw std::invalid_argument("multimap_product_check: one target per nonempty list of blocks");
  const std::size_t n = blocks.size();
  std::vector<GSet> xs;
  for (const auto& b : blocks) xs.push_back(product_of(g, b));
  std::vector<GSet> xpre = prefix_coproducts(xs), ypre = prefix_coproducts(targets);
  const GSet& xall = xpre.back();
  const GSet& yall = ypre.back();
  std::vector<std::size_t> xoff{0}, yoff{0};
  for (std::size_t j = 0; j < n; ++j) {
    xoff.push_back(xoff.back() + xs[j].size());
    yoff.push_back(yoff.back() + targets[j].size());
  }
  auto part_of = [](const std::vector<std::size_t>& off, std::size_t p) {
    return static_cast<std::size_t>(std::upper_bound(off.begin(), off.end(), p) - off.begin()) - 1;
  };

  std::set<std::pair<std::size_t, SpanCode>> rhs;
  for (std::size_t j = 0; j < n; ++j)
    for (const SpanCode& c : hom_basis(xs[j], targets[j])) rhs.insert({j, c});

  MultimapProductCheck out;
  out.rhs = rhs.size();
  out.bijective = true;
  out.round_trip = true;
  std::set<std::pair<std::size_t, SpanCode>> hit;
  for (const SpanCode& c : hom_basis(xall, yall)) {
    const std::size_t px = static_cast<std::size_t>(c.point) / yall.size();
    const std::size_t py = static_cast<std::size_t>(c.point) % yall.size();
    if (part_of(xoff, px) != part_of(yoff, py)) continue;
    ++out.lhs;
    BurnsideElement e = BurnsideElement::basis(xall, yall, c);
    std::vector<BurnsideElement> rows = split(e, xs, xpre, true);
    std::size_t nonzero = 0;
    BurnsideElement rebuilt_rows;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<BurnsideElement> cells = split(rows[j], targets, ypre, false);
      BurnsideElement rebuilt = cells[0];
      for (std::size_t k = 1; k < n; ++k) rebuilt = direct_sum_assemble_target(rebuilt, cells[k]);
      if (!(rebuilt == rows[j])) out.round_trip = false;
      for (std::size_t k = 0; k < n; ++k) {
        if (cells[k].is_zero()) continue;
        ++nonzero;
        if (k != j || cells[k].terms().size() != 1 || cells[k].terms().begin()->second != 1) {
          out.bijective = false;
          continue;
        }
        if (!hit.insert({j, cells[k].terms().begin()->first}).second) out.bijective = false;
      }
      rebuilt_rows = j == 0 ? rows[0] : direct_sum_assemble(rebuilt_rows, rows[j]);
    }
    if (!(rebuilt_rows == e)) out.round_trip = false;
    if (nonzero != 1) out.bijective = false;
  }
  if (hit != rhs) out.bijective = false;
  return out;
}

PromonoidalSweep promonoidal_sweep(const GroupPtr& g, int max_feet) {
  if (max_feet < 0) throw std::invalid_argument("max_feet must be non-negative");
  const int nc = static_cast<int>(g->class_count());
  auto label = [&](int k) { return g->subgroup_class(k).label; };
  PromonoidalSweep out;
  for (int nf = 0; nf <= max_feet; ++nf) {
    std::vector<int> feet(nf, 0);
    while (true) {
      std::vector<GSet> fs;
      std::vector<std::string> names;
      for (int k : feet) {
        fs.push_back(GSet::orbit(g, k));
        names.push_back(label(k));
      }
      for (int bc = 1; bc <= 2; ++bc) {
        std::vector<int> block(nf, 0);
        while (true) {
          for (int z = 0; z < nc; ++z) {
            ++out.coend_cases;
            if (!promonoidal_check(g, fs, block, bc, GSet::orbit(g, z)).ok())
              out.failures.push_back({"coend", names, block, bc, {label(z)}});
          }
          // next non-decreasing assignment
          int i = nf - 1;
          while (i >= 0 && block[i] == bc - 1) --i;
          if (i < 0) break;
          ++block[i];
          for (int j = i + 1; j < nf; ++j) block[j] = block[i];
        }
      }
      for (int cut = 1; cut < nf; ++cut) {
        std::vector<std::vector<GSet>> blocks{{fs.begin(), fs.begin() + cut}, {fs.begin() + cut, fs.end()}};
        for (int y0 = 0; y0 < nc; ++y0)
          for (int y1 = 0; y1 < nc; ++y1) {
            ++out.product_cases;
            if (!multimap_product_check(g, blocks, {GSet::orbit(g, y0), GSet::orbit(g, y1)}).ok())
              out.failures.push_back({"product", names, {cut}, 2, {label(y0), label(y1)}});
          }
      }
      int i = nf - 1;
      while (i >= 0 && feet[i] == nc - 1) feet[i--] = 0;
      if (i < 0) break;
      ++feet[i];
    }
  }
  return out;
}

}  // namespace mackeykit
