#include "mackeykit/spectral.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <tuple>

namespace mackeykit {

namespace {

struct Range {
  int nmin = 0, nmax = -1, wmin = 0, wmax = -1;
};

Range range_of(const FilteredComplex& f) {
  Range r;
  if (f.summands.empty()) return r;
  r.nmin = r.wmin = INT_MAX;
  r.nmax = r.wmax = INT_MIN;
  for (const auto& s : f.summands) {
    r.nmin = std::min(r.nmin, s.degree);
    r.nmax = std::max(r.nmax, s.degree);
    r.wmin = std::min(r.wmin, s.weight);
    r.wmax = std::max(r.wmax, s.weight);
  }
  return r;
}

// Chain group of F_b / F_a in degree n.
struct Window {
  std::vector<std::size_t> members;
  MackeyFunctor object;
  std::vector<std::vector<std::size_t>> offsets;  // [level][member]
};

class Engine {
 public:
  explicit Engine(const FilteredComplex& f) : f_(f), g_(f.summands.front().object.group()) {
    zero_ = MackeyFunctor::zero(g_);
  }

  const Window& window(int n, int a, int b) {
    auto key = std::make_tuple(n, a, b);
    auto it = windows_.find(key);
    if (it != windows_.end()) return it->second;
    Window w;
    std::vector<MackeyFunctor> parts;
    for (std::size_t i = 0; i < f_.summands.size(); ++i) {
      const auto& s = f_.summands[i];
      if (s.degree == n && s.weight > a && s.weight <= b) {
        w.members.push_back(i);
        parts.push_back(s.object);
      }
    }
    w.object = parts.empty() ? zero_ : parts.size() == 1 ? parts[0] : direct_sum(parts).object;
    const int nc = static_cast<int>(g_->class_count());
    w.offsets.assign(nc, {});
    for (int j = 0; j < nc; ++j) {
      std::size_t acc = 0;
      for (const auto& p : parts) {
        w.offsets[j].push_back(acc);
        acc += p.level(j).ngens();
      }
    }
    return windows_.emplace(key, std::move(w)).first->second;
  }

  // Levelwise matrix of the full differential between two windows of
  // adjacent degrees, or of the identity on shared summands when the
  // degrees agree.
  Matrix between(const Window& src, const Window& dst, int j, bool differential) const {
    Matrix m(dst.object.level(j).ngens(), src.object.level(j).ngens());
    auto pos = [](const Window& w, std::size_t idx) -> std::ptrdiff_t {
      auto it = std::find(w.members.begin(), w.members.end(), idx);
      return it == w.members.end() ? -1 : it - w.members.begin();
    };
    if (differential) {
      for (const auto& b : f_.blocks) {
        auto s = pos(src, b.from), t = pos(dst, b.to);
        if (s < 0 || t < 0) continue;
        m.add_block(dst.offsets[j][t], src.offsets[j][s], b.map.at(j));
      }
    } else {
      for (std::size_t s = 0; s < src.members.size(); ++s) {
        auto t = pos(dst, src.members[s]);
        if (t < 0) continue;
        m.add_block(dst.offsets[j][t], src.offsets[j][s],
                    Matrix::identity(f_.summands[src.members[s]].object.level(j).ngens()));
      }
    }
    return m;
  }

  MackeyMorphism differential(int n, int a, int b) {
    const Window& src = window(n, a, b);
    const Window& dst = window(n - 1, a, b);
    std::vector<Matrix> comps;
    for (int j = 0; j < static_cast<int>(g_->class_count()); ++j) comps.push_back(between(src, dst, j, true));
    return MackeyMorphism(src.object, dst.object, std::move(comps), false);
  }

  const HomologyResult& homology_of(int n, int a, int b) {
    auto key = std::make_tuple(n, a, b);
    auto it = homology_.find(key);
    if (it != homology_.end()) return it->second;
    HomologyResult h = homology(differential(n + 1, a, b), differential(n, a, b));
    return homology_.emplace(key, std::move(h)).first->second;
  }

  // Map H_n(a, b] -> H_n(c, d] induced by the identity on shared summands.
  MackeyMorphism induced(int n, int a, int b, int c, int d) {
    const HomologyResult& hs = homology_of(n, a, b);
    const HomologyResult& ht = homology_of(n, c, d);
    const Window& ws = window(n, a, b);
    const Window& wt = window(n, c, d);
    std::vector<Matrix> comps;
    for (int j = 0; j < static_cast<int>(g_->class_count()); ++j) {
      Matrix img = between(ws, wt, j, false) * hs.levels[j].representatives();
      Matrix m(ht.object.level(j).ngens(), img.cols());
      for (std::size_t x = 0; x < img.cols(); ++x) m.set_column(x, ht.levels[j].class_of(img.column(x)));
      comps.push_back(std::move(m));
    }
    return MackeyMorphism(hs.object, ht.object, std::move(comps), false);
  }

  struct Entry {
    MackeyMorphism to_target;  // H_n(p-r, p] -> H_n(p-1, p+r-1]
    SubobjectResult image;
  };

  const Entry& entry(int r, int p, int n) {
    auto key = std::make_tuple(r, p, n);
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
    MackeyMorphism f = induced(n, p - r, p, p - 1, p + r - 1);
    SubobjectResult im = image(f);
    return entries_.emplace(key, Entry{f, im}).first->second;
  }

  MackeyMorphism d(int r, int p, int n) {
    const Entry& src = entry(r, p, n);
    const Entry& dst = entry(r, p - r, n - 1);
    const HomologyResult& ha = homology_of(n, p - r, p);
    const HomologyResult& hb = homology_of(n - 1, p - 2 * r, p - r);
    const Window& wa = window(n, p - r, p);
    const Window& wb = window(n - 1, p - 2 * r, p - r);
    std::vector<Matrix> comps;
    for (int j = 0; j < static_cast<int>(g_->class_count()); ++j) {
      const AbGroup& target_h = src.to_target.target().level(j);
      const AbGroup& dst_e = dst.image.object.level(j);
      SubgroupEmbedding dst_in(dst.to_target.target().level(j), dst.image.inclusion.at(j));
      Matrix bound = between(wa, wb, j, true);
      Matrix m(dst_e.ngens(), src.image.object.level(j).ngens());
      for (std::size_t x = 0; x < m.cols(); ++x) {
        Vector in_target = src.image.inclusion.at(j).column(x);
        auto y = preimage(src.to_target.at(j), target_h, in_target);
        if (!y) throw std::logic_error("spectral sequence: element outside the image");
        Vector cyc = ha.levels[j].representatives() * *y;
        Vector cls = hb.levels[j].class_of(bound * cyc);
        Vector pushed = dst.to_target.at(j) * cls;
        m.set_column(x, dst_e.normalize(dst_in.coordinates(pushed)));
      }
      comps.push_back(std::move(m));
    }
    return MackeyMorphism(src.image.object, dst.image.object, std::move(comps), true);
  }

  const FilteredComplex& complex() const { return f_; }
  const MackeyFunctor& zero() const { return zero_; }

 private:
  const FilteredComplex& f_;
  GroupPtr g_;
  MackeyFunctor zero_;
  std::map<std::tuple<int, int, int>, Window> windows_;
  std::map<std::tuple<int, int, int>, HomologyResult> homology_;
  std::map<std::tuple<int, int, int>, Entry> entries_;
};

std::string level_label(const MackeyFunctor& m, int j) { return m.group()->subgroup_class(j).label; }

std::optional<std::string> levelwise_mismatch(const MackeyFunctor& a, const MackeyFunctor& b) {
  for (int j = 0; j < static_cast<int>(a.level_count()); ++j)
    if (a.level(j).invariants() != b.level(j).invariants())
      return "level " + level_label(a, j) + ": " + a.level(j).to_string() + " vs " + b.level(j).to_string();
  return std::nullopt;
}

}  // namespace

std::optional<std::string> filtered_complex_failure(const FilteredComplex& f) {
  if (f.summands.empty()) return std::nullopt;
  for (std::size_t i = 0; i < f.blocks.size(); ++i) {
    const auto& b = f.blocks[i];
    if (b.from >= f.summands.size() || b.to >= f.summands.size()) return "block " + std::to_string(i) + ": bad summand index";
    const auto& s = f.summands[b.from];
    const auto& t = f.summands[b.to];
    if (s.degree != t.degree + 1) return "block " + std::to_string(i) + ": degree must drop by one";
    if (t.weight > s.weight) return "block " + std::to_string(i) + ": raises the filtration weight";
    if (auto e = morphism_failure(s.object, t.object, b.map.components()))
      return "block " + std::to_string(i) + ": " + *e;
  }
  Range r = range_of(f);
  Engine eng(f);
  for (int n = r.nmin + 2; n <= r.nmax; ++n) {
    MackeyMorphism d1 = eng.differential(n, INT_MIN, INT_MAX);
    MackeyMorphism d0 = eng.differential(n - 1, INT_MIN, INT_MAX);
    if (!compose(d0, d1).is_zero()) return "d o d is nonzero from degree " + std::to_string(n);
  }
  return std::nullopt;
}

FilteredComplex skeletal_filtration(const ChainComplex& c) {
  FilteredComplex f;
  for (std::size_t p = 0; p < c.objects.size(); ++p)
    f.summands.push_back({static_cast<int>(p), static_cast<int>(p), c.objects[p]});
  for (std::size_t p = 1; p < c.objects.size(); ++p) f.blocks.push_back({p, p - 1, c.differentials[p]});
  return f;
}

const MackeyFunctor* SpectralPage::at(int p, int q) const {
  for (const auto& e : entries)
    if (e.p == p && e.q == q) return &e.object;
  return nullptr;
}

int stable_page(const FilteredComplex& f) {
  Range r = range_of(f);
  return std::max(1, r.wmax - r.wmin + 1);
}

std::vector<SpectralPage> ss_pages(const FilteredComplex& f, int rmax) {
  if (rmax < 1) throw std::invalid_argument("ss_pages: rmax must be at least 1");
  std::vector<SpectralPage> pages;
  if (f.summands.empty()) {
    for (int r = 1; r <= rmax; ++r) pages.push_back(SpectralPage{r, {}, {}});
    return pages;
  }
  Range rg = range_of(f);
  Engine eng(f);
  for (int r = 1; r <= rmax; ++r) {
    SpectralPage page;
    page.r = r;
    for (int n = rg.nmin; n <= rg.nmax; ++n)
      for (int p = rg.wmin; p <= rg.wmax; ++p) page.entries.push_back({p, n - p, eng.entry(r, p, n).image.object});
    for (int n = rg.nmin + 1; n <= rg.nmax; ++n)
      for (int p = rg.wmin + r; p <= rg.wmax; ++p) page.differentials.push_back({p, n - p, eng.d(r, p, n)});
    pages.push_back(std::move(page));
  }
  return pages;
}

std::optional<std::string> page_consistency_failure(const std::vector<SpectralPage>& pages) {
  auto find_d = [](const SpectralPage& pg, int p, int q) -> const MackeyMorphism* {
    for (const auto& d : pg.differentials)
      if (d.p == p && d.q == q) return &d.map;
    return nullptr;
  };
  for (std::size_t i = 0; i < pages.size(); ++i) {
    const SpectralPage& pg = pages[i];
    const int r = pg.r;
    for (const auto& d : pg.differentials) {
      if (const MackeyMorphism* next = find_d(pg, d.p - r, d.q + r - 1))
        if (!compose(*next, d.map).is_zero())
          return "E_" + std::to_string(r) + ": d o d nonzero at (" + std::to_string(d.p) + "," + std::to_string(d.q) + ")";
    }
    if (i + 1 >= pages.size()) continue;
    const SpectralPage& nx = pages[i + 1];
    for (const auto& e : pg.entries) {
      const MackeyFunctor zero = MackeyFunctor::zero(e.object.group());
      const MackeyMorphism* out = find_d(pg, e.p, e.q);
      const MackeyMorphism* in = find_d(pg, e.p + r, e.q - r + 1);
      MackeyMorphism outm = out ? *out : MackeyMorphism::zero(e.object, zero);
      MackeyMorphism inm = in ? *in : MackeyMorphism::zero(zero, e.object);
      MackeyFunctor h = homology(inm, outm).object;
      const MackeyFunctor* nxt = nx.at(e.p, e.q);
      if (!nxt) return "E_" + std::to_string(r + 1) + " is missing an entry";
      if (auto mm = levelwise_mismatch(h, *nxt))
        return "E_" + std::to_string(r + 1) + "(" + std::to_string(e.p) + "," + std::to_string(e.q) +
               ") differs from the homology of E_" + std::to_string(r) + " at " + *mm;
    }
  }
  return std::nullopt;
}

std::vector<PageEntry> associated_graded(const FilteredComplex& f) {
  std::vector<PageEntry> out;
  if (f.summands.empty()) return out;
  Range rg = range_of(f);
  Engine eng(f);
  const int lo = rg.wmin - 1, hi = rg.wmax;
  const int nc = static_cast<int>(f.summands.front().object.group()->class_count());
  for (int n = rg.nmin; n <= rg.nmax; ++n)
    for (int p = rg.wmin; p <= rg.wmax; ++p) {
      // gr_p = H_n(F_p) / (ker(H_n(F_p) -> H_n) + im(H_n(F_{p-1}) -> H_n(F_p)))
      MackeyMorphism to_total = eng.induced(n, lo, p, lo, hi);
      MackeyMorphism from_below = eng.induced(n, lo, p - 1, lo, p);
      SubobjectResult ker = kernel(to_total);
      std::vector<Matrix> gens;
      for (int j = 0; j < nc; ++j) gens.push_back(Matrix::hstack(ker.inclusion.at(j), from_below.at(j)));
      out.push_back({p, n - p, quotient_by_elements(to_total.source(), gens).object});
    }
  return out;
}

std::optional<std::string> convergence_failure(const FilteredComplex& f) {
  if (f.summands.empty()) return std::nullopt;
  const int r = stable_page(f);
  auto pages = ss_pages(f, r);
  auto gr = associated_graded(f);
  for (const auto& e : gr) {
    const MackeyFunctor* inf = pages.back().at(e.p, e.q);
    if (!inf) return "stable page is missing an entry";
    if (auto mm = levelwise_mismatch(*inf, e.object))
      return "E_inf(" + std::to_string(e.p) + "," + std::to_string(e.q) + ") vs gr: " + *mm;
  }
  return std::nullopt;
}

}  // namespace mackeykit
