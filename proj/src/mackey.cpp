#include "mackeykit/mackey.hpp"

#include <deque>
#include <random>
#include <sstream>

namespace mackeykit {

namespace {

std::string map_name(const FiniteGroup& g, const OrbitMap& m) {
  std::ostringstream os;
  os << g.subgroup_class(m.source).label << "->" << g.subgroup_class(m.target).label << "@" << m.point;
  return os.str();
}

void require_shape(const Matrix& m, std::size_t r, std::size_t c, const std::string& what) {
  if (m.rows() != r || m.cols() != c)
    throw std::invalid_argument(what + ": expected " + std::to_string(r) + "x" + std::to_string(c) + " matrix, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

std::vector<GSet> orbit_sets(const GroupPtr& g) {
  std::vector<GSet> out;
  for (int k = 0; k < static_cast<int>(g->class_count()); ++k) out.push_back(GSet::orbit(g, k));
  return out;
}

// Sub-functor with the given levelwise subgroups (assumed closed).
MackeyFunctor induced_sub(const MackeyFunctor& m, const std::vector<SubgroupEmbedding>& subs) {
  const FiniteGroup& g = *m.group();
  MackeyData data;
  for (const auto& s : subs) data.levels.push_back(s.group());
  for (const OrbitMap& phi : g.generating_maps()) {
    const auto& ss = subs[phi.source];
    const auto& st = subs[phi.target];
    Matrix r(ss.group().ngens(), st.group().ngens());
    Matrix rimg = m.res(phi) * st.inclusion();
    for (std::size_t j = 0; j < r.cols(); ++j) r.set_column(j, ss.coordinates(rimg.column(j)));
    Matrix t(st.group().ngens(), ss.group().ngens());
    Matrix timg = m.tr(phi) * ss.inclusion();
    for (std::size_t j = 0; j < t.cols(); ++j) t.set_column(j, st.coordinates(timg.column(j)));
    data.res.push_back(std::move(r));
    data.tr.push_back(std::move(t));
  }
  return MackeyFunctor::from_generators(m.group(), std::move(data));
}

MackeyFunctor induced_quotient(const MackeyFunctor& m, const std::vector<Presentation>& q) {
  const FiniteGroup& g = *m.group();
  MackeyData data;
  for (const auto& p : q) data.levels.push_back(p.group);
  for (const OrbitMap& phi : g.generating_maps()) {
    const auto& qs = q[phi.source];
    const auto& qt = q[phi.target];
    data.res.push_back(qs.group.normalize_map(qs.to_group * m.res(phi) * qt.from_group));
    data.tr.push_back(qt.group.normalize_map(qt.to_group * m.tr(phi) * qs.from_group));
  }
  return MackeyFunctor::from_generators(m.group(), std::move(data));
}

}  // namespace

MackeyFunctor MackeyFunctor::from_generators(GroupPtr group, MackeyData data, const ValidationOptions& opts) {
  const FiniteGroup& g = *group;
  const auto& gens = g.generating_maps();
  const std::size_t nc = g.class_count();
  if (data.levels.size() != nc) throw std::invalid_argument("Mackey data: wrong number of levels");
  if (data.res.size() != gens.size() || data.tr.size() != gens.size())
    throw std::invalid_argument("Mackey data: expected one res and one tr per generating map");
  const bool check = opts.level != Validation::kNone;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const OrbitMap& phi = gens[i];
    const AbGroup& ls = data.levels[phi.source];
    const AbGroup& lt = data.levels[phi.target];
    require_shape(data.res[i], ls.ngens(), lt.ngens(), "res along " + map_name(g, phi));
    require_shape(data.tr[i], lt.ngens(), ls.ngens(), "tr along " + map_name(g, phi));
    if (check) {
      if (!is_well_defined(data.res[i], lt, ls))
        throw VerificationError("res along " + map_name(g, phi) + " does not respect torsion");
      if (!is_well_defined(data.tr[i], ls, lt))
        throw VerificationError("tr along " + map_name(g, phi) + " does not respect torsion");
    }
    data.res[i] = ls.normalize_map(data.res[i]);
    data.tr[i] = lt.normalize_map(data.tr[i]);
  }

  auto d = std::make_shared<Data>();
  d->group = group;
  d->levels = std::move(data.levels);
  d->res.assign(g.map_count(), Matrix());
  d->tr.assign(g.map_count(), Matrix());
  std::vector<bool> known(g.map_count(), false);
  std::deque<std::size_t> queue;
  for (std::size_t k = 0; k < nc; ++k) {
    std::size_t idx = g.map_index(g.identity(static_cast<int>(k)));
    d->res[idx] = Matrix::identity(d->levels[k].ngens());
    d->tr[idx] = Matrix::identity(d->levels[k].ngens());
    known[idx] = true;
    queue.push_back(idx);
  }
  while (!queue.empty()) {
    const std::size_t idx = queue.front();
    queue.pop_front();
    const OrbitMap psi = g.map_at(idx);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i].source != psi.target) continue;
      const OrbitMap chi = g.compose(gens[i], psi);
      const std::size_t c = g.map_index(chi);
      Matrix r = d->levels[chi.source].normalize_map(d->res[idx] * data.res[i]);
      Matrix t = d->levels[chi.target].normalize_map(data.tr[i] * d->tr[idx]);
      if (!known[c]) {
        d->res[c] = std::move(r);
        d->tr[c] = std::move(t);
        known[c] = true;
        queue.push_back(c);
      } else if (check) {
        if (!maps_equal(r, d->res[c], d->levels[chi.source]))
          throw VerificationError("restriction is not functorial: res along " + map_name(g, chi) +
                                  " differs from res along " + map_name(g, psi) + " then " + map_name(g, gens[i]));
        if (!maps_equal(t, d->tr[c], d->levels[chi.target]))
          throw VerificationError("transfer is not functorial: tr along " + map_name(g, chi) +
                                  " differs from tr along " + map_name(g, psi) + " then " + map_name(g, gens[i]));
      }
    }
  }
  for (std::size_t i = 0; i < known.size(); ++i)
    if (!known[i]) throw std::logic_error("generating maps do not reach " + map_name(g, g.map_at(i)));

  MackeyFunctor m;
  m.d_ = std::move(d);
  if (check) {
    if (auto fail = validation_failure(m, opts)) throw VerificationError(*fail);
  }
  return m;
}

MackeyFunctor MackeyFunctor::zero(GroupPtr group) {
  MackeyData data;
  data.levels.assign(group->class_count(), AbGroup());
  for (std::size_t i = 0; i < group->generating_maps().size(); ++i) {
    data.res.emplace_back(0, 0);
    data.tr.emplace_back(0, 0);
  }
  return from_generators(std::move(group), std::move(data));
}

std::vector<std::size_t> MackeyFunctor::ranks() const {
  std::vector<std::size_t> r;
  for (const auto& l : d_->levels) r.push_back(l.ngens());
  return r;
}

const Matrix& MackeyFunctor::res(const OrbitMap& m) const { return d_->res[d_->group->map_index(m)]; }
const Matrix& MackeyFunctor::tr(const OrbitMap& m) const { return d_->tr[d_->group->map_index(m)]; }

MackeyData MackeyFunctor::generating_data() const {
  MackeyData data;
  data.levels = d_->levels;
  for (const OrbitMap& phi : d_->group->generating_maps()) {
    data.res.push_back(res(phi));
    data.tr.push_back(tr(phi));
  }
  return data;
}

bool MackeyFunctor::is_zero() const {
  for (const auto& l : d_->levels)
    if (!l.is_trivial()) return false;
  return true;
}

AbGroup MackeyFunctor::value(const GSet& x) const {
  std::vector<AbGroup> parts;
  for (const auto& o : x.orbits()) parts.push_back(d_->levels[o.cls]);
  return direct_sum(parts);
}

std::vector<std::size_t> MackeyFunctor::offsets(const GSet& x) const {
  std::vector<std::size_t> off;
  std::size_t acc = 0;
  for (const auto& o : x.orbits()) {
    off.push_back(acc);
    acc += d_->levels[o.cls].ngens();
  }
  off.push_back(acc);
  return off;
}

Matrix MackeyFunctor::eval_span(const BurnsideElement& e) const {
  const GSet& x = e.source();
  const GSet& y = e.target();
  if (x.group() != d_->group) throw std::invalid_argument("eval_span: group mismatch");
  auto ox = offsets(x), oy = offsets(y);
  Matrix out(oy.back(), ox.back());
  const int ny = static_cast<int>(y.size());
  for (const auto& [c, coef] : e.terms()) {
    auto [ix, phi] = x.map_from_orbit(c.cls, c.point / ny);
    auto [iy, psi] = y.map_from_orbit(c.cls, c.point % ny);
    out.add_block(oy[iy], ox[ix], tr(psi) * res(phi), coef);
  }
  return value(y).normalize_map(out);
}

Matrix MackeyFunctor::pushforward(const GMap& f) const {
  const GSet& x = f.source();
  const GSet& y = f.target();
  auto ox = offsets(x), oy = offsets(y);
  Matrix out(oy.back(), ox.back());
  for (std::size_t i = 0; i < x.orbit_count(); ++i) {
    const auto& o = x.orbits()[i];
    auto [iy, psi] = y.map_from_orbit(o.cls, f(o.points[0]));
    out.add_block(oy[iy], ox[i], tr(psi));
  }
  return value(y).normalize_map(out);
}

Matrix MackeyFunctor::pullback(const GMap& f) const {
  const GSet& x = f.source();
  const GSet& y = f.target();
  auto ox = offsets(x), oy = offsets(y);
  Matrix out(ox.back(), oy.back());
  for (std::size_t i = 0; i < x.orbit_count(); ++i) {
    const auto& o = x.orbits()[i];
    auto [iy, psi] = y.map_from_orbit(o.cls, f(o.points[0]));
    out.add_block(ox[i], oy[iy], res(psi));
  }
  return value(x).normalize_map(out);
}

std::string MackeyFunctor::summary() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < d_->levels.size(); ++k) {
    if (k) os << ", ";
    os << d_->group->subgroup_class(static_cast<int>(k)).label << ": " << d_->levels[k].to_string();
  }
  return os.str();
}

std::optional<std::string> double_coset_failure(const MackeyFunctor& m, int a, int b) {
  const FiniteGroup& g = *m.group();
  for (int t = 0; t < static_cast<int>(g.class_count()); ++t)
    for (const OrbitMap& phi : g.maps(a, t))
      for (const OrbitMap& psi : g.maps(b, t)) {
        Matrix lhs = m.res(phi) * m.tr(psi);
        Matrix rhs(m.level(a).ngens(), m.level(b).ngens());
        for (const auto& o : g.pullback(phi, psi)) rhs += m.tr(o.to_first) * m.res(o.to_second);
        if (!maps_equal(lhs, rhs, m.level(a)))
          return "double coset formula fails: res along " + map_name(g, phi) + " after tr along " + map_name(g, psi);
      }
  return std::nullopt;
}

std::optional<std::string> validation_failure(const MackeyFunctor& m, const ValidationOptions& opts) {
  if (opts.level == Validation::kNone) return std::nullopt;
  const FiniteGroup& g = *m.group();
  for (const OrbitMap& phi : g.all_maps()) {
    if (!is_well_defined(m.res(phi), m.level(phi.target), m.level(phi.source)))
      return "res along " + map_name(g, phi) + " does not respect torsion";
    if (!is_well_defined(m.tr(phi), m.level(phi.source), m.level(phi.target)))
      return "tr along " + map_name(g, phi) + " does not respect torsion";
  }
  for (const OrbitMap& psi : g.all_maps())
    for (const OrbitMap& gam : g.generating_maps()) {
      if (gam.source != psi.target) continue;
      OrbitMap chi = g.compose(gam, psi);
      if (!maps_equal(m.res(psi) * m.res(gam), m.res(chi), m.level(chi.source)))
        return "restriction is not functorial along " + map_name(g, psi) + " then " + map_name(g, gam);
      if (!maps_equal(m.tr(gam) * m.tr(psi), m.tr(chi), m.level(chi.target)))
        return "transfer is not functorial along " + map_name(g, psi) + " then " + map_name(g, gam);
    }
  for (const OrbitMap& alpha : g.all_maps()) {
    if (!g.is_iso(alpha)) continue;
    if (!maps_equal(m.tr(alpha), m.res(g.inverse(alpha)), m.level(alpha.source)))
      return "tr along automorphism " + map_name(g, alpha) + " is not res along its inverse";
  }
  for (const OrbitMap& phi : g.generating_maps()) {
    if (g.is_iso(phi)) continue;
    for (const OrbitMap& psi : g.all_maps()) {
      if (psi.target != phi.target) continue;
      Matrix lhs = m.res(phi) * m.tr(psi);
      Matrix rhs(m.level(phi.source).ngens(), m.level(psi.source).ngens());
      for (const auto& o : g.pullback(phi, psi)) rhs += m.tr(o.to_first) * m.res(o.to_second);
      if (!maps_equal(lhs, rhs, m.level(phi.source)))
        return "double coset formula fails: res along " + map_name(g, phi) + " after tr along " + map_name(g, psi);
    }
  }
  if (opts.level != Validation::kFull) return std::nullopt;

  const auto orbits = orbit_sets(m.group());
  const int nc = static_cast<int>(g.class_count());
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> pick_class(0, nc - 1);
  std::uniform_int_distribution<int> pick_coef(-2, 2);
  auto random_element = [&](const GSet& x, const GSet& y) {
    auto basis = hom_basis(x, y);
    BurnsideElement e(x, y);
    if (basis.empty()) return e;
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    for (int t = 0; t < 2; ++t) e.add(basis[pick(rng)], pick_coef(rng));
    return e;
  };
  for (int trial = 0; trial < opts.span_pairs; ++trial) {
    const GSet& x = orbits[pick_class(rng)];
    const GSet& y = orbits[pick_class(rng)];
    const GSet& z = orbits[pick_class(rng)];
    BurnsideElement s1 = random_element(x, y);
    BurnsideElement s2 = random_element(y, z);
    Matrix lhs = m.eval_span(compose(s2, s1));
    Matrix rhs = m.eval_span(s2) * m.eval_span(s1);
    if (!maps_equal(lhs, rhs, m.value(z)))
      return "span composition is not preserved: " + s2.to_string() + " after " + s1.to_string();
  }
  return std::nullopt;
}

MackeyFunctor mackey_from_levels(GroupPtr group, std::vector<AbGroup> levels, const std::vector<Matrix>& res,
                                 const std::vector<Matrix>& tr, const std::vector<Matrix>& conj,
                                 const ValidationOptions& opts) {
  const FiniteGroup& g = *group;
  const auto& gens = g.generating_maps();
  std::vector<std::size_t> plain, autos;
  for (std::size_t i = 0; i < gens.size(); ++i) (g.is_iso(gens[i]) ? autos : plain).push_back(i);
  if (res.size() != plain.size() || tr.size() != plain.size())
    throw std::invalid_argument("mackey_from_levels: expected " + std::to_string(plain.size()) +
                                " restriction and transfer matrices");
  if (conj.size() != autos.size())
    throw std::invalid_argument("mackey_from_levels: expected " + std::to_string(autos.size()) +
                                " conjugation matrices");
  MackeyData data;
  data.levels = std::move(levels);
  data.res.resize(gens.size());
  data.tr.resize(gens.size());
  for (std::size_t j = 0; j < plain.size(); ++j) {
    data.res[plain[j]] = res[j];
    data.tr[plain[j]] = tr[j];
  }
  for (std::size_t j = 0; j < autos.size(); ++j) data.res[autos[j]] = conj[j];
  for (std::size_t j = 0; j < autos.size(); ++j) {
    OrbitMap inv = g.inverse(gens[autos[j]]);
    for (std::size_t i = 0; i < autos.size(); ++i)
      if (gens[autos[i]] == inv) data.tr[autos[j]] = conj[i];
  }
  return MackeyFunctor::from_generators(std::move(group), std::move(data), opts);
}

// ---------------------------------------------------------------------------

std::optional<std::string> morphism_failure(const MackeyFunctor& source, const MackeyFunctor& target,
                                            const std::vector<Matrix>& comps) {
  const FiniteGroup& g = *source.group();
  if (source.group() != target.group()) return "morphism between functors over different groups";
  if (comps.size() != g.class_count()) return "morphism has the wrong number of components";
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const int kk = static_cast<int>(k);
    if (comps[k].rows() != target.level(kk).ngens() || comps[k].cols() != source.level(kk).ngens())
      return "component at " + g.subgroup_class(kk).label + " has the wrong shape";
    if (!is_well_defined(comps[k], source.level(kk), target.level(kk)))
      return "component at " + g.subgroup_class(kk).label + " does not respect torsion";
  }
  for (const OrbitMap& phi : g.generating_maps()) {
    const Matrix& fs = comps[phi.source];
    const Matrix& ft = comps[phi.target];
    if (!maps_equal(fs * source.res(phi), target.res(phi) * ft, target.level(phi.source)))
      return "morphism does not commute with res along " + map_name(g, phi);
    if (!maps_equal(ft * source.tr(phi), target.tr(phi) * fs, target.level(phi.target)))
      return "morphism does not commute with tr along " + map_name(g, phi);
  }
  return std::nullopt;
}

MackeyMorphism::MackeyMorphism(MackeyFunctor source, MackeyFunctor target, std::vector<Matrix> components, bool check)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (check) {
    if (auto fail = morphism_failure(source_, target_, components_)) throw VerificationError(*fail);
  }
  for (std::size_t k = 0; k < components_.size(); ++k)
    components_[k] = target_.level(static_cast<int>(k)).normalize_map(components_[k]);
}

MackeyMorphism MackeyMorphism::identity(const MackeyFunctor& m) {
  std::vector<Matrix> c;
  for (std::size_t k = 0; k < m.level_count(); ++k) c.push_back(Matrix::identity(m.level(static_cast<int>(k)).ngens()));
  return MackeyMorphism(m, m, std::move(c), false);
}

MackeyMorphism MackeyMorphism::zero(const MackeyFunctor& source, const MackeyFunctor& target) {
  std::vector<Matrix> c;
  for (std::size_t k = 0; k < source.level_count(); ++k)
    c.emplace_back(target.level(static_cast<int>(k)).ngens(), source.level(static_cast<int>(k)).ngens());
  return MackeyMorphism(source, target, std::move(c), false);
}

Matrix MackeyMorphism::on_gset(const GSet& x) const {
  std::vector<Matrix> blocks;
  for (const auto& o : x.orbits()) blocks.push_back(components_[o.cls]);
  return Matrix::block_diagonal(blocks);
}

bool MackeyMorphism::is_isomorphism() const {
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const int kk = static_cast<int>(k);
    if (!mackeykit::is_isomorphism(components_[k], source_.level(kk), target_.level(kk))) return false;
  }
  return true;
}

bool MackeyMorphism::is_zero() const {
  for (std::size_t k = 0; k < components_.size(); ++k)
    if (!target_.level(static_cast<int>(k)).normalize_map(components_[k]).is_zero()) return false;
  return true;
}

bool MackeyMorphism::operator==(const MackeyMorphism& o) const {
  if (components_.size() != o.components_.size()) return false;
  for (std::size_t k = 0; k < components_.size(); ++k)
    if (!maps_equal(components_[k], o.components_[k], target_.level(static_cast<int>(k)))) return false;
  return true;
}

MackeyMorphism MackeyMorphism::operator+(const MackeyMorphism& o) const {
  std::vector<Matrix> c;
  for (std::size_t k = 0; k < components_.size(); ++k) c.push_back(components_[k] + o.components_[k]);
  return MackeyMorphism(source_, target_, std::move(c), false);
}

MackeyMorphism MackeyMorphism::operator-(const MackeyMorphism& o) const {
  std::vector<Matrix> c;
  for (std::size_t k = 0; k < components_.size(); ++k) c.push_back(components_[k] - o.components_[k]);
  return MackeyMorphism(source_, target_, std::move(c), false);
}

MackeyMorphism compose(const MackeyMorphism& g, const MackeyMorphism& f) {
  std::vector<Matrix> c;
  for (std::size_t k = 0; k < f.components().size(); ++k) c.push_back(g.at(static_cast<int>(k)) * f.at(static_cast<int>(k)));
  return MackeyMorphism(f.source(), g.target(), std::move(c), false);
}

IsoWitness make_iso_witness(const MackeyMorphism& f) {
  const FiniteGroup& g = *f.source().group();
  std::vector<Matrix> inv;
  for (std::size_t k = 0; k < f.components().size(); ++k) {
    const int kk = static_cast<int>(k);
    try {
      inv.push_back(inverse_isomorphism(f.at(kk), f.source().level(kk), f.target().level(kk)));
    } catch (const std::domain_error&) {
      throw VerificationError("map is not invertible at level " + g.subgroup_class(kk).label);
    }
  }
  MackeyMorphism back(f.target(), f.source(), std::move(inv), true);
  if (!(compose(back, f) == MackeyMorphism::identity(f.source())) ||
      !(compose(f, back) == MackeyMorphism::identity(f.target())))
    throw VerificationError("inverse check failed");
  return {f, back};
}

SubobjectResult kernel(const MackeyMorphism& f) {
  std::vector<SubgroupEmbedding> subs;
  std::vector<Matrix> incl;
  for (std::size_t k = 0; k < f.components().size(); ++k) {
    const int kk = static_cast<int>(k);
    subs.push_back(mackeykit::kernel(f.at(kk), f.source().level(kk), f.target().level(kk)));
    incl.push_back(subs.back().inclusion());
  }
  MackeyFunctor obj = induced_sub(f.source(), subs);
  return {obj, MackeyMorphism(obj, f.source(), std::move(incl), false)};
}

QuotientResult cokernel(const MackeyMorphism& f) {
  std::vector<Presentation> q;
  std::vector<Matrix> proj;
  for (std::size_t k = 0; k < f.components().size(); ++k) {
    const int kk = static_cast<int>(k);
    q.push_back(mackeykit::cokernel(f.at(kk), f.target().level(kk)));
    proj.push_back(q.back().to_group);
  }
  MackeyFunctor obj = induced_quotient(f.target(), q);
  return {obj, MackeyMorphism(f.target(), obj, std::move(proj), false)};
}

SubobjectResult image(const MackeyMorphism& f) {
  std::vector<SubgroupEmbedding> subs;
  std::vector<Matrix> incl;
  for (std::size_t k = 0; k < f.components().size(); ++k) {
    subs.emplace_back(f.target().level(static_cast<int>(k)), f.at(static_cast<int>(k)));
    incl.push_back(subs.back().inclusion());
  }
  MackeyFunctor obj = induced_sub(f.target(), subs);
  return {obj, MackeyMorphism(obj, f.target(), std::move(incl), false)};
}

DirectSumResult direct_sum(const std::vector<MackeyFunctor>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: no summands");
  const GroupPtr& gp = parts[0].group();
  const FiniteGroup& g = *gp;
  MackeyData data;
  const std::size_t nc = g.class_count();
  std::vector<std::vector<std::size_t>> off(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    std::vector<AbGroup> ls;
    std::size_t acc = 0;
    for (const auto& p : parts) {
      if (p.group() != gp) throw std::invalid_argument("direct_sum: group mismatch");
      off[k].push_back(acc);
      acc += p.level(static_cast<int>(k)).ngens();
      ls.push_back(p.level(static_cast<int>(k)));
    }
    off[k].push_back(acc);
    data.levels.push_back(direct_sum(ls));
  }
  for (const OrbitMap& phi : g.generating_maps()) {
    std::vector<Matrix> r, t;
    for (const auto& p : parts) {
      r.push_back(p.res(phi));
      t.push_back(p.tr(phi));
    }
    data.res.push_back(Matrix::block_diagonal(r));
    data.tr.push_back(Matrix::block_diagonal(t));
  }
  DirectSumResult out;
  out.object = MackeyFunctor::from_generators(gp, std::move(data));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<Matrix> inj, proj;
    for (std::size_t k = 0; k < nc; ++k) {
      const std::size_t n = parts[i].level(static_cast<int>(k)).ngens(), total = off[k].back();
      Matrix a(total, n), b(n, total);
      for (std::size_t j = 0; j < n; ++j) {
        a(off[k][i] + j, j) = 1;
        b(j, off[k][i] + j) = 1;
      }
      inj.push_back(std::move(a));
      proj.push_back(std::move(b));
    }
    out.injections.emplace_back(parts[i], out.object, std::move(inj), false);
    out.projections.emplace_back(out.object, parts[i], std::move(proj), false);
  }
  return out;
}

SubobjectResult generated_subfunctor(const MackeyFunctor& m, const std::vector<Matrix>& gens) {
  const FiniteGroup& g = *m.group();
  const int nc = static_cast<int>(g.class_count());
  if (static_cast<int>(gens.size()) != nc) throw std::invalid_argument("generated_subfunctor: one block per level");
  std::vector<SubgroupEmbedding> subs;
  std::vector<Matrix> incl;
  for (int j = 0; j < nc; ++j) {
    std::vector<Vector> cols;
    for (int k = 0; k < nc; ++k) {
      if (gens[k].cols() == 0) continue;
      require_shape(gens[k], m.level(k).ngens(), gens[k].cols(), "generated_subfunctor");
      const int nj = static_cast<int>(g.cosets(j).size);
      const GSet sk = GSet::orbit(m.group(), k), sj = GSet::orbit(m.group(), j);
      for (const SpanCode& c : hom_basis(sk, sj)) {
        OrbitMap phi{c.cls, k, c.point / nj};
        OrbitMap psi{c.cls, j, c.point % nj};
        Matrix img = m.tr(psi) * m.res(phi) * gens[k];
        for (std::size_t col = 0; col < img.cols(); ++col) cols.push_back(img.column(col));
      }
    }
    subs.emplace_back(m.level(j), Matrix::from_columns(m.level(j).ngens(), cols));
    incl.push_back(subs.back().inclusion());
  }
  MackeyFunctor obj = induced_sub(m, subs);
  return {obj, MackeyMorphism(obj, m, std::move(incl), false)};
}

QuotientResult quotient_by_elements(const MackeyFunctor& m, const std::vector<Matrix>& gens) {
  SubobjectResult sub = generated_subfunctor(m, gens);
  return cokernel(sub.inclusion);
}

HomologyResult homology(const MackeyMorphism& f, const MackeyMorphism& g) {
  const FiniteGroup& grp = *f.source().group();
  HomologyResult out;
  const std::size_t nc = grp.class_count();
  MackeyData data;
  for (std::size_t k = 0; k < nc; ++k) {
    const int kk = static_cast<int>(k);
    out.levels.emplace_back(f.at(kk), f.source().level(kk), f.target().level(kk), g.at(kk), g.target().level(kk));
    data.levels.push_back(out.levels.back().group());
  }
  const MackeyFunctor& mid = f.target();
  for (const OrbitMap& phi : grp.generating_maps()) {
    const Homology& hs = out.levels[phi.source];
    const Homology& ht = out.levels[phi.target];
    Matrix r(hs.group().ngens(), ht.group().ngens());
    Matrix rimg = mid.res(phi) * ht.representatives();
    for (std::size_t j = 0; j < r.cols(); ++j) r.set_column(j, hs.class_of(rimg.column(j)));
    Matrix t(ht.group().ngens(), hs.group().ngens());
    Matrix timg = mid.tr(phi) * hs.representatives();
    for (std::size_t j = 0; j < t.cols(); ++j) t.set_column(j, ht.class_of(timg.column(j)));
    data.res.push_back(std::move(r));
    data.tr.push_back(std::move(t));
  }
  out.object = MackeyFunctor::from_generators(f.source().group(), std::move(data));
  return out;
}

// ---------------------------------------------------------------------------

MackeyFunctor representable(const GSet& x) {
  const GroupPtr& gp = x.group();
  const FiniteGroup& g = *gp;
  const auto orbits = orbit_sets(gp);
  std::vector<std::vector<SpanCode>> bases;
  MackeyData data;
  for (const auto& o : orbits) {
    bases.push_back(hom_basis(x, o));
    data.levels.push_back(AbGroup::free(bases.back().size()));
  }
  for (const OrbitMap& phi : g.generating_maps()) {
    const GSet& s = orbits[phi.source];
    const GSet& t = orbits[phi.target];
    BurnsideElement rspan = BurnsideElement::basis(t, s, span_code(t, s, g.rep(phi.source), phi.point, 0));
    BurnsideElement tspan = BurnsideElement::basis(s, t, span_code(s, t, g.rep(phi.source), 0, phi.point));
    const auto& bs = bases[phi.source];
    const auto& bt = bases[phi.target];
    Matrix r(bs.size(), bt.size());
    for (std::size_t j = 0; j < bt.size(); ++j) {
      const BurnsideElement e = compose(rspan, BurnsideElement::basis(x, t, bt[j]));
      for (const auto& [c, a] : e.terms()) r(basis_position(bs, c), j) += a;
    }
    Matrix tm(bt.size(), bs.size());
    for (std::size_t j = 0; j < bs.size(); ++j) {
      const BurnsideElement e = compose(tspan, BurnsideElement::basis(x, s, bs[j]));
      for (const auto& [c, a] : e.terms()) tm(basis_position(bt, c), j) += a;
    }
    data.res.push_back(std::move(r));
    data.tr.push_back(std::move(tm));
  }
  return MackeyFunctor::from_generators(gp, std::move(data));
}

// ---------------------------------------------------------------------------

HomGroup::HomGroup(MackeyFunctor source, MackeyFunctor target) : source_(std::move(source)), target_(std::move(target)) {
  const FiniteGroup& g = *source_.group();
  if (source_.group() != target_.group()) throw std::invalid_argument("hom_mackey: group mismatch");
  const int nc = static_cast<int>(g.class_count());
  std::vector<Integer> moduli;
  std::size_t nvars = 0;
  for (int k = 0; k < nc; ++k) {
    offset_.push_back(nvars);
    const std::size_t rows = target_.level(k).ngens(), cols = source_.level(k).ngens();
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) moduli.push_back(target_.level(k).modulus(r));
    nvars += rows * cols;
  }
  offset_.push_back(nvars);
  ambient_ = AbGroup(moduli);
  auto var = [&](int k, std::size_t r, std::size_t c) { return offset_[k] + r * source_.level(k).ngens() + c; };

  // each equation: coefficients over the variables, plus the modulus it holds in
  std::vector<Vector> eqs;
  std::vector<Integer> eq_mod;
  auto new_eq = [&](const Integer& mod) {
    eqs.push_back(zero_vector(nvars));
    eq_mod.push_back(mod);
    return eqs.size() - 1;
  };
  for (int k = 0; k < nc; ++k) {
    const AbGroup& mk = source_.level(k);
    const AbGroup& nk = target_.level(k);
    for (std::size_t c = 0; c < mk.ngens(); ++c) {
      if (mk.modulus(c) == 0) continue;
      for (std::size_t r = 0; r < nk.ngens(); ++r) {
        if (nk.modulus(r) != 0 && mpz_divisible_p(mk.modulus(c).get_mpz_t(), nk.modulus(r).get_mpz_t())) continue;
        std::size_t e = new_eq(nk.modulus(r));
        eqs[e][var(k, r, c)] = mk.modulus(c);
      }
    }
  }
  // f_s A = B f_t, in level `row_level` of the target
  auto add_commutation = [&](int s, int t, const Matrix& a, const Matrix& b) {
    const AbGroup& ns = target_.level(s);
    for (std::size_t r = 0; r < ns.ngens(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) {
        std::size_t e = new_eq(ns.modulus(r));
        for (std::size_t m = 0; m < a.rows(); ++m)
          if (a(m, c) != 0) eqs[e][var(s, r, m)] += a(m, c);
        for (std::size_t m = 0; m < b.cols(); ++m)
          if (b(r, m) != 0) eqs[e][var(t, m, c)] -= b(r, m);
      }
  };
  for (const OrbitMap& phi : g.generating_maps()) {
    add_commutation(phi.source, phi.target, source_.res(phi), target_.res(phi));
    add_commutation(phi.target, phi.source, source_.tr(phi), target_.tr(phi));
  }
  std::vector<std::size_t> slack;
  for (std::size_t e = 0; e < eqs.size(); ++e)
    if (eq_mod[e] != 0) slack.push_back(e);
  Matrix sys(eqs.size(), nvars + slack.size());
  for (std::size_t e = 0; e < eqs.size(); ++e)
    for (std::size_t v = 0; v < nvars; ++v) sys(e, v) = eqs[e][v];
  for (std::size_t i = 0; i < slack.size(); ++i) sys(slack[i], nvars + i) = eq_mod[slack[i]];
  Matrix gens;
  if (eqs.empty()) {
    gens = Matrix::identity(nvars);
  } else {
    Matrix ker = kernel_basis(sys);
    std::vector<std::size_t> top(nvars);
    for (std::size_t i = 0; i < nvars; ++i) top[i] = i;
    gens = ker.select_rows(top);
  }
  embedding_ = std::make_shared<SubgroupEmbedding>(ambient_, gens);
}

Vector HomGroup::flatten(const std::vector<Matrix>& comps) const {
  Vector v = zero_vector(offset_.back());
  for (std::size_t k = 0; k < comps.size(); ++k)
    for (std::size_t r = 0; r < comps[k].rows(); ++r)
      for (std::size_t c = 0; c < comps[k].cols(); ++c) v[offset_[k] + r * comps[k].cols() + c] = comps[k](r, c);
  return v;
}

MackeyMorphism HomGroup::morphism(const Vector& coords) const {
  Vector v = embedding_->inclusion() * coords;
  std::vector<Matrix> comps;
  for (std::size_t k = 0; k + 1 < offset_.size(); ++k) {
    const std::size_t rows = target_.level(static_cast<int>(k)).ngens(), cols = source_.level(static_cast<int>(k)).ngens();
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = v[offset_[k] + r * cols + c];
    comps.push_back(std::move(m));
  }
  return MackeyMorphism(source_, target_, std::move(comps), false);
}

Vector HomGroup::coordinates(const MackeyMorphism& f) const { return embedding_->coordinates(flatten(f.components())); }

HomGroup hom_mackey(const MackeyFunctor& m, const MackeyFunctor& n) { return HomGroup(m, n); }

MackeyMorphism yoneda_morphism(const GSet& x, const MackeyFunctor& n, const Vector& element) {
  const GroupPtr& gp = x.group();
  MackeyFunctor ax = representable(x);
  std::vector<Matrix> comps;
  for (int j = 0; j < static_cast<int>(gp->class_count()); ++j) {
    GSet oj = GSet::orbit(gp, j);
    auto basis = hom_basis(x, oj);
    Matrix f(n.level(j).ngens(), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c)
      f.set_column(c, n.eval_span(BurnsideElement::basis(x, oj, basis[c])) * element);
    comps.push_back(std::move(f));
  }
  return MackeyMorphism(ax, n, std::move(comps), true);
}

YonedaWitness yoneda(const GSet& x, const MackeyFunctor& n) {
  HomGroup hom = hom_mackey(representable(x), n);
  AbGroup nx = n.value(x);
  Matrix to(hom.group().ngens(), nx.ngens());
  for (std::size_t i = 0; i < nx.ngens(); ++i)
    to.set_column(i, hom.coordinates(yoneda_morphism(x, n, unit_vector(nx.ngens(), i))));
  YonedaWitness w{hom, to, false};
  w.is_iso = is_isomorphism(to, nx, hom.group());
  return w;
}

// ---------------------------------------------------------------------------

void Representation::validate() const {
  if (!group) throw std::invalid_argument("representation without group");
  const std::size_t n = group->order(), d = module.ngens();
  if (action.size() != n) throw std::invalid_argument("representation needs one matrix per group element");
  for (const auto& a : action) {
    require_shape(a, d, d, "representation matrix");
    if (!is_well_defined(a, module, module)) throw VerificationError("action matrix does not respect torsion");
  }
  if (!maps_equal(action[0], Matrix::identity(d), module)) throw VerificationError("identity acts nontrivially");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!maps_equal(action[group->mul(static_cast<Element>(a), static_cast<Element>(b))], action[a] * action[b],
                      module))
        throw VerificationError("action matrices are not multiplicative at (" + std::to_string(a) + ", " +
                                std::to_string(b) + ")");
}

Representation Representation::trivial(GroupPtr g, const AbGroup& v) {
  Representation r{g, v, {}};
  r.action.assign(g->order(), Matrix::identity(v.ngens()));
  return r;
}

Representation Representation::permutation(const GSet& x, const Integer& modulus) {
  Representation r{x.group(), AbGroup(std::vector<Integer>(x.size(), modulus)), {}};
  for (Element e = 0; e < static_cast<Element>(x.group()->order()); ++e) {
    Matrix m(x.size(), x.size());
    for (std::size_t p = 0; p < x.size(); ++p) m(static_cast<std::size_t>(x.act(e, static_cast<int>(p))), p) = 1;
    r.action.push_back(std::move(m));
  }
  return r;
}

Representation Representation::sign(GroupPtr g, Subset kernel, const Integer& modulus) {
  if (!g->is_subgroup(kernel) || (static_cast<std::size_t>(popcount(kernel)) != g->order() &&
                                  2 * static_cast<std::size_t>(popcount(kernel)) != g->order()))
    throw std::invalid_argument("sign representation needs a subgroup of index at most 2");
  Representation r{g, AbGroup({modulus}), {}};
  for (Element e = 0; e < static_cast<Element>(g->order()); ++e) {
    Matrix m(1, 1);
    m(0, 0) = contains(kernel, e) ? 1 : -1;
    r.action.push_back(r.module.normalize_map(m));
  }
  return r;
}

SubgroupEmbedding fixed_submodule(const Representation& v, Subset h) {
  const std::size_t d = v.module.ngens();
  std::vector<Element> hs = members(h);
  Matrix stacked(d * hs.size(), d);
  std::vector<AbGroup> copies(hs.size(), v.module);
  for (std::size_t i = 0; i < hs.size(); ++i) stacked.set_block(i * d, 0, v.action[hs[i]] - Matrix::identity(d));
  return mackeykit::kernel(stacked, v.module, direct_sum(copies));
}

MackeyFunctor fixed_point_mackey(const Representation& v) {
  v.validate();
  const GroupPtr& gp = v.group;
  const FiniteGroup& g = *gp;
  std::vector<SubgroupEmbedding> fixed;
  MackeyData data;
  for (int k = 0; k < static_cast<int>(g.class_count()); ++k) {
    fixed.push_back(fixed_submodule(v, g.rep(k)));
    data.levels.push_back(fixed.back().group());
  }
  const std::size_t d = v.module.ngens();
  for (const OrbitMap& phi : g.generating_maps()) {
    const auto& fs = fixed[phi.source];
    const auto& ft = fixed[phi.target];
    const Element a = g.point_rep(phi);
    Matrix rimg = v.action[a] * ft.inclusion();
    Matrix r(fs.group().ngens(), ft.group().ngens());
    for (std::size_t j = 0; j < r.cols(); ++j) r.set_column(j, fs.coordinates(rimg.column(j)));
    // sum over the distinct cosets g H_s with g in H_t a^-1
    Matrix sum(d, d);
    std::vector<bool> seen(g.cosets(phi.source).size, false);
    for (Element h : members(g.rep(phi.target))) {
      Element x = g.mul(h, g.inv(a));
      int c = g.cosets(phi.source).label_of[x];
      if (seen[c]) continue;
      seen[c] = true;
      sum += v.action[x];
    }
    Matrix timg = sum * fs.inclusion();
    Matrix t(ft.group().ngens(), fs.group().ngens());
    for (std::size_t j = 0; j < t.cols(); ++j) t.set_column(j, ft.coordinates(timg.column(j)));
    data.res.push_back(std::move(r));
    data.tr.push_back(std::move(t));
  }
  return MackeyFunctor::from_generators(gp, std::move(data));
}

}  // namespace mackeykit
