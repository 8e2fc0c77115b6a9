#include "mackeykit/burnside.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mackeykit {

namespace {

void require_same_group(const GSet& a, const GSet& b, const char* what) {
  if (a.group() != b.group()) throw std::invalid_argument(std::string(what) + ": group mismatch");
}

}  // namespace

SpanCode span_code(const GSet& x, const GSet& y, Subset stab, int px, int py) {
  const FiniteGroup& g = *x.group();
  const int k = g.class_of(stab);
  const Element c = g.conjugator(stab);
  const int cx = x.act(c, px), cy = y.act(c, py);
  const int ny = static_cast<int>(y.size());
  int best = cx * ny + cy;
  for (Element n : members(g.subgroup_class(k).normalizer)) {
    int p = x.act(n, cx) * ny + y.act(n, cy);
    best = std::min(best, p);
  }
  return SpanCode{k, best};
}

std::vector<SpanCode> hom_basis(const GSet& x, const GSet& y) {
  require_same_group(x, y, "hom_basis");
  const FiniteGroup& g = *x.group();
  const int ny = static_cast<int>(y.size());
  std::vector<SpanCode> out;
  for (int k = 0; k < static_cast<int>(g.class_count()); ++k) {
    const Subset h = g.rep(k);
    std::vector<int> fx, fy;
    for (int a = 0; a < static_cast<int>(x.size()); ++a)
      if (x.is_fixed(a, h)) fx.push_back(a);
    for (int b = 0; b < ny; ++b)
      if (y.is_fixed(b, h)) fy.push_back(b);
    std::vector<bool> seen(x.size() * y.size(), false);
    for (int a : fx)
      for (int b : fy) {
        int p = a * ny + b;
        if (seen[p]) continue;
        for (Element n : members(g.subgroup_class(k).normalizer)) seen[x.act(n, a) * ny + y.act(n, b)] = true;
        out.push_back(SpanCode{k, p});  // p is the smallest member of its orbit
      }
  }
  return out;
}

std::size_t basis_position(const std::vector<SpanCode>& basis, const SpanCode& c) {
  auto it = std::lower_bound(basis.begin(), basis.end(), c);
  if (it == basis.end() || *it != c) throw std::invalid_argument("span code is not in the basis");
  return static_cast<std::size_t>(it - basis.begin());
}

BurnsideElement BurnsideElement::basis(const GSet& x, const GSet& y, const SpanCode& c) {
  BurnsideElement e(x, y);
  e.add(c, 1);
  return e;
}

BurnsideElement BurnsideElement::identity(const GSet& x) {
  BurnsideElement e(x, x);
  for (const auto& o : x.orbits()) {
    int b = o.points[0];
    e.add(span_code(x, x, x.group()->rep(o.cls), b, b), 1);
  }
  return e;
}

Integer BurnsideElement::coefficient(const SpanCode& c) const {
  auto it = terms_.find(c);
  return it == terms_.end() ? Integer(0) : it->second;
}

void BurnsideElement::add(const SpanCode& c, const Integer& a) {
  if (a == 0) return;
  auto [it, inserted] = terms_.emplace(c, a);
  if (!inserted) {
    it->second += a;
    if (it->second == 0) terms_.erase(it);
  }
}

Vector BurnsideElement::coordinates() const {
  auto basis = hom_basis(source_, target_);
  Vector v = zero_vector(basis.size());
  for (const auto& [c, a] : terms_) v[basis_position(basis, c)] = a;
  return v;
}

BurnsideElement BurnsideElement::from_coordinates(const GSet& x, const GSet& y, const Vector& v) {
  auto basis = hom_basis(x, y);
  if (v.size() != basis.size()) throw std::invalid_argument("from_coordinates: length mismatch");
  BurnsideElement e(x, y);
  for (std::size_t i = 0; i < v.size(); ++i) e.add(basis[i], v[i]);
  return e;
}

BurnsideElement BurnsideElement::operator+(const BurnsideElement& o) const {
  if (source_ != o.source_ || target_ != o.target_) throw std::invalid_argument("Burnside sum: feet differ");
  BurnsideElement r = *this;
  for (const auto& [c, a] : o.terms_) r.add(c, a);
  return r;
}

BurnsideElement BurnsideElement::operator-(const BurnsideElement& o) const { return *this + o * Integer(-1); }

BurnsideElement BurnsideElement::operator*(const Integer& s) const {
  BurnsideElement r(source_, target_);
  for (const auto& [c, a] : terms_) r.add(c, a * s);
  return r;
}

bool BurnsideElement::operator==(const BurnsideElement& o) const {
  return source_ == o.source_ && target_ == o.target_ && terms_ == o.terms_;
}

std::string BurnsideElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, a] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (a != 1) os << a << "*";
    os << "[" << source_.group()->subgroup_class(c.cls).label << ":" << c.point << "]";
  }
  return os.str();
}

BurnsideElement span_canonicalize(const GMap& left, const GMap& right) {
  if (left.source() != right.source()) throw std::invalid_argument("span_canonicalize: legs have different sources");
  const GSet& u = left.source();
  BurnsideElement e(left.target(), right.target());
  for (const auto& o : u.orbits()) {
    int b = o.points[0];
    e.add(span_code(left.target(), right.target(), u.group()->rep(o.cls), left(b), right(b)), 1);
  }
  return e;
}

BurnsideElement compose(const BurnsideElement& s2, const BurnsideElement& s1) {
  if (s1.target() != s2.source()) throw std::invalid_argument("compose: middle feet differ");
  const GSet& x = s1.source();
  const GSet& y = s1.target();
  const GSet& z = s2.target();
  const FiniteGroup& g = *x.group();
  const int ny = static_cast<int>(y.size()), nz = static_cast<int>(z.size());
  BurnsideElement out(x, z);
  for (const auto& [c1, a1] : s1.terms()) {
    const int x1 = c1.point / ny, y1 = c1.point % ny;
    const Subset h1 = g.rep(c1.cls);
    for (const auto& [c2, a2] : s2.terms()) {
      const int y2 = c2.point / nz, z2 = c2.point % nz;
      const CosetSpace& cs = g.cosets(c2.cls);
      std::vector<bool> seen(cs.size, false);
      // pullback orbits meet eH1 x G/H2; classify them as H1-orbits on the fibre
      for (std::size_t v = 0; v < cs.size; ++v) {
        if (seen[v]) continue;
        const Element r = cs.rep[v];
        if (y.act(r, y2) != y1) continue;
        for (Element h : members(h1)) seen[cs.act(h, static_cast<int>(v))] = true;
        const Subset stab = h1 & g.conjugate(g.rep(c2.cls), r);
        out.add(span_code(x, z, stab, x1, z.act(r, z2)), a1 * a2);
      }
    }
  }
  return out;
}

BurnsideElement tensor(const BurnsideElement& s, const BurnsideElement& t) {
  require_same_group(s.source(), t.source(), "tensor");
  const GSet xs = product_set(s.source(), t.source());
  const GSet ys = product_set(s.target(), t.target());
  const FiniteGroup& g = *xs.group();
  const int ny1 = static_cast<int>(s.target().size()), ny2 = static_cast<int>(t.target().size());
  const int nx2 = static_cast<int>(t.source().size());
  BurnsideElement out(xs, ys);
  for (const auto& [c1, a1] : s.terms()) {
    const int x1 = c1.point / ny1, y1 = c1.point % ny1;
    const Subset h1 = g.rep(c1.cls);
    for (const auto& [c2, a2] : t.terms()) {
      const int x2 = c2.point / ny2, y2 = c2.point % ny2;
      const CosetSpace& cs = g.cosets(c2.cls);
      std::vector<bool> seen(cs.size, false);
      for (std::size_t v = 0; v < cs.size; ++v) {
        if (seen[v]) continue;
        for (Element h : members(h1)) seen[cs.act(h, static_cast<int>(v))] = true;
        const Element r = cs.rep[v];
        const Subset stab = h1 & g.conjugate(g.rep(c2.cls), r);
        const int px = x1 * nx2 + t.source().act(r, x2);
        const int py = y1 * ny2 + t.target().act(r, y2);
        out.add(span_code(xs, ys, stab, px, py), a1 * a2);
      }
    }
  }
  return out;
}

BurnsideElement dual(const BurnsideElement& s) {
  const int ny = static_cast<int>(s.target().size());
  BurnsideElement out(s.target(), s.source());
  const FiniteGroup& g = *s.source().group();
  for (const auto& [c, a] : s.terms())
    out.add(span_code(s.target(), s.source(), g.rep(c.cls), c.point % ny, c.point / ny), a);
  return out;
}

BurnsideElement evaluation_span(const GSet& x) {
  GSet xx = product_set(x, x);
  GSet pt = GSet::point(x.group());
  std::vector<int> diag(x.size()), bang(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) diag[i] = static_cast<int>(i * x.size() + i);
  return span_canonicalize(GMap(x, xx, std::move(diag)), GMap(x, pt, std::move(bang)));
}

BurnsideElement coevaluation_span(const GSet& x) {
  GSet xx = product_set(x, x);
  GSet pt = GSet::point(x.group());
  std::vector<int> diag(x.size()), bang(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) diag[i] = static_cast<int>(i * x.size() + i);
  return span_canonicalize(GMap(x, pt, std::move(bang)), GMap(x, xx, std::move(diag)));
}

BurnsideElement triangle_composite(const GSet& x) {
  // X = X x pt -> X x (X x X) = (X x X) x X -> pt x X = X; with lexicographic
  // pair labels the unitors and the associator are identities on labels.
  BurnsideElement first = tensor(BurnsideElement::identity(x), coevaluation_span(x));
  BurnsideElement second = tensor(evaluation_span(x), BurnsideElement::identity(x));
  BurnsideElement composite = compose(second, first);
  BurnsideElement out(x, x);
  for (const auto& [c, a] : composite.terms()) out.add(c, a);
  return out;
}

BurnsideElement transfer_span(const GroupPtr& g, const OrbitMap& phi) {
  GSet s = GSet::orbit(g, phi.source), t = GSet::orbit(g, phi.target);
  return BurnsideElement::basis(s, t, span_code(s, t, g->rep(phi.source), 0, phi.point));
}

BurnsideElement restriction_span(const GroupPtr& g, const OrbitMap& phi) {
  GSet s = GSet::orbit(g, phi.source), t = GSet::orbit(g, phi.target);
  return BurnsideElement::basis(t, s, span_code(t, s, g->rep(phi.source), phi.point, 0));
}

std::pair<BurnsideElement, BurnsideElement> direct_sum_decompose(const BurnsideElement& e, const GSet& x1,
                                                                 const GSet& x2) {
  if (coproduct(x1, x2).set != e.source()) throw std::invalid_argument("direct_sum_decompose: source is not x1 + x2");
  const GSet& y = e.target();
  const int ny = static_cast<int>(y.size()), n1 = static_cast<int>(x1.size());
  const FiniteGroup& g = *y.group();
  BurnsideElement a(x1, y), b(x2, y);
  for (const auto& [c, coef] : e.terms()) {
    int px = c.point / ny, py = c.point % ny;
    if (px < n1)
      a.add(span_code(x1, y, g.rep(c.cls), px, py), coef);
    else
      b.add(span_code(x2, y, g.rep(c.cls), px - n1, py), coef);
  }
  return {a, b};
}

std::pair<BurnsideElement, BurnsideElement> direct_sum_decompose_target(const BurnsideElement& e, const GSet& y1,
                                                                        const GSet& y2) {
  if (coproduct(y1, y2).set != e.target())
    throw std::invalid_argument("direct_sum_decompose_target: target is not y1 + y2");
  const GSet& x = e.source();
  const int ny = static_cast<int>(e.target().size()), n1 = static_cast<int>(y1.size());
  const FiniteGroup& g = *x.group();
  BurnsideElement a(x, y1), b(x, y2);
  for (const auto& [c, coef] : e.terms()) {
    int px = c.point / ny, py = c.point % ny;
    if (py < n1)
      a.add(span_code(x, y1, g.rep(c.cls), px, py), coef);
    else
      b.add(span_code(x, y2, g.rep(c.cls), px, py - n1), coef);
  }
  return {a, b};
}

BurnsideElement direct_sum_assemble(const BurnsideElement& a, const BurnsideElement& b) {
  if (a.target() != b.target()) throw std::invalid_argument("direct_sum_assemble: targets differ");
  GSet x = coproduct(a.source(), b.source()).set;
  const GSet& y = a.target();
  const int ny = static_cast<int>(y.size()), n1 = static_cast<int>(a.source().size());
  const FiniteGroup& g = *y.group();
  BurnsideElement out(x, y);
  for (const auto& [c, coef] : a.terms()) out.add(span_code(x, y, g.rep(c.cls), c.point / ny, c.point % ny), coef);
  for (const auto& [c, coef] : b.terms())
    out.add(span_code(x, y, g.rep(c.cls), c.point / ny + n1, c.point % ny), coef);
  return out;
}

BurnsideElement direct_sum_assemble_target(const BurnsideElement& a, const BurnsideElement& b) {
  if (a.source() != b.source()) throw std::invalid_argument("direct_sum_assemble_target: sources differ");
  GSet y = coproduct(a.target(), b.target()).set;
  const GSet& x = a.source();
  const int ny1 = static_cast<int>(a.target().size()), ny2 = static_cast<int>(b.target().size());
  const FiniteGroup& g = *x.group();
  BurnsideElement out(x, y);
  for (const auto& [c, coef] : a.terms())
    out.add(span_code(x, y, g.rep(c.cls), c.point / ny1, c.point % ny1), coef);
  for (const auto& [c, coef] : b.terms())
    out.add(span_code(x, y, g.rep(c.cls), c.point / ny2, c.point % ny2 + ny1), coef);
  return out;
}

Matrix table_of_marks(const FiniteGroup& g) {
  const std::size_t n = g.class_count();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = static_cast<unsigned long>(g.map_points(static_cast<int>(j), static_cast<int>(i)).size());
  return m;
}

Matrix burnside_ring(const GroupPtr& g) {
  const std::size_t n = g->class_count();
  GSet pt = GSet::point(g);
  Matrix t(n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      BurnsideElement a = BurnsideElement::basis(pt, pt, SpanCode{static_cast<int>(i), 0});
      BurnsideElement b = BurnsideElement::basis(pt, pt, SpanCode{static_cast<int>(j), 0});
      const BurnsideElement ab = compose(a, b);
      for (const auto& [c, coef] : ab.terms()) t(static_cast<std::size_t>(c.cls), i * n + j) += coef;
    }
  return t;
}

Matrix burnside_ring_by_products(const GroupPtr& g) {
  const std::size_t n = g->class_count();
  Matrix t(n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      GSet p = product_set(GSet::orbit(g, static_cast<int>(i)), GSet::orbit(g, static_cast<int>(j)));
      for (auto [k, mult] : p.orbit_type()) t(static_cast<std::size_t>(k), i * n + j) = mult;
    }
  return t;
}

GSet product_of(const GroupPtr& g, const std::vector<GSet>& feet) {
  GSet p = GSet::point(g);
  for (std::size_t i = 0; i < feet.size(); ++i) p = i == 0 ? feet[0] : product_set(p, feet[i]);
  return p;
}

std::vector<SpanCode> multimap_basis(const std::vector<GSet>& feet, const GSet& z) {
  if (feet.empty()) throw std::invalid_argument("multimap_basis: empty list of feet");
  return hom_basis(product_of(z.group(), feet), z);
}

}  // namespace mackeykit
