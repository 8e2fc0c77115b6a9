#include "mackeykit/abelian.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mackeykit {

AbGroup::AbGroup(std::vector<Integer> moduli) : moduli_(std::move(moduli)) {
  for (auto& m : moduli_) {
    m = abs(m);
    if (m == 1) throw std::invalid_argument("AbGroup: modulus 1 is not allowed");
  }
}

AbGroup AbGroup::free(std::size_t rank) { return AbGroup(std::vector<Integer>(rank, Integer(0))); }

bool AbGroup::is_free() const {
  return std::all_of(moduli_.begin(), moduli_.end(), [](const Integer& m) { return m == 0; });
}

std::size_t AbGroup::free_rank() const {
  return static_cast<std::size_t>(std::count_if(moduli_.begin(), moduli_.end(), [](const Integer& m) { return m == 0; }));
}

Integer AbGroup::order() const {
  Integer o = 1;
  for (const auto& m : moduli_) {
    if (m == 0) return 0;
    o *= m;
  }
  return o;
}

Vector AbGroup::normalize(const Vector& v) const {
  if (v.size() != moduli_.size()) throw std::invalid_argument("AbGroup::normalize: length mismatch");
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = reduce_mod(v[i], moduli_[i]);
  return out;
}

bool AbGroup::equal(const Vector& a, const Vector& b) const { return is_zero(a - b); }

bool AbGroup::is_zero(const Vector& v) const {
  if (v.size() != moduli_.size()) throw std::invalid_argument("AbGroup::is_zero: length mismatch");
  for (std::size_t i = 0; i < v.size(); ++i)
    if (reduce_mod(v[i], moduli_[i]) != 0) return false;
  return true;
}

Matrix AbGroup::normalize_map(const Matrix& m) const {
  if (m.rows() != moduli_.size()) throw std::invalid_argument("normalize_map: row count mismatch");
  Matrix out = m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (moduli_[r] != 0)
      for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = reduce_mod(m(r, c), moduli_[r]);
  return out;
}

Matrix AbGroup::relations() const {
  std::vector<std::size_t> tors;
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    if (moduli_[i] != 0) tors.push_back(i);
  Matrix r(moduli_.size(), tors.size());
  for (std::size_t j = 0; j < tors.size(); ++j) r(tors[j], j) = moduli_[tors[j]];
  return r;
}

std::vector<Integer> AbGroup::invariants() const {
  std::vector<Integer> tors;
  std::size_t rank = 0;
  for (const auto& m : moduli_) {
    if (m == 0)
      ++rank;
    else
      tors.push_back(m);
  }
  std::vector<Integer> out;
  if (!tors.empty()) {
    Matrix d(tors.size(), tors.size());
    for (std::size_t i = 0; i < tors.size(); ++i) d(i, i) = tors[i];
    for (const auto& x : smith_normal_form(d, kNoTransform).diagonal)
      if (x != 1) out.push_back(x);
  }
  out.insert(out.end(), rank, Integer(0));
  return out;
}

std::string AbGroup::to_string() const {
  if (moduli_.empty()) return "0";
  std::ostringstream os;
  auto inv = invariants();
  std::size_t rank = 0;
  bool first = true;
  for (const auto& m : inv) {
    if (m == 0) {
      ++rank;
      continue;
    }
    if (!first) os << " + ";
    os << "Z/" << m;
    first = false;
  }
  if (rank) {
    if (!first) os << " + ";
    os << "Z";
    if (rank > 1) os << '^' << rank;
  }
  return os.str();
}

AbGroup direct_sum(const std::vector<AbGroup>& parts) {
  std::vector<Integer> m;
  for (const auto& p : parts) m.insert(m.end(), p.moduli().begin(), p.moduli().end());
  return AbGroup(std::move(m));
}

Presentation tensor(const AbGroup& a, const AbGroup& b) {
  const std::size_t n = a.ngens() * b.ngens();
  std::vector<Vector> rels;
  for (std::size_t i = 0; i < a.ngens(); ++i)
    for (std::size_t j = 0; j < b.ngens(); ++j) {
      Integer g = gcd(a.modulus(i), b.modulus(j));
      if (g != 0) {
        Vector r = zero_vector(n);
        r[i * b.ngens() + j] = g;
        rels.push_back(std::move(r));
      }
    }
  return present(n, Matrix::from_columns(n, rels));
}

bool isomorphic(const AbGroup& a, const AbGroup& b) { return a.invariants() == b.invariants(); }

bool is_well_defined(const Matrix& f, const AbGroup& a, const AbGroup& b) {
  if (f.rows() != b.ngens() || f.cols() != a.ngens()) return false;
  for (std::size_t i = 0; i < a.ngens(); ++i) {
    if (a.modulus(i) == 0) continue;
    if (!b.is_zero(a.modulus(i) * f.column(i))) return false;
  }
  return true;
}

bool maps_equal(const Matrix& f, const Matrix& g, const AbGroup& target) {
  if (f.rows() != g.rows() || f.cols() != g.cols()) return false;
  for (std::size_t c = 0; c < f.cols(); ++c)
    if (!target.equal(f.column(c), g.column(c))) return false;
  return true;
}

Presentation present(std::size_t n, const Matrix& relations) {
  if (relations.rows() != n) throw std::invalid_argument("present: relation matrix has wrong row count");
  SmithForm s = smith_normal_form(relations, kLeft | kLeftInverse);
  std::vector<std::size_t> keep;
  std::vector<Integer> moduli;
  for (std::size_t i = 0; i < n; ++i) {
    Integer d = i < s.rank ? s.diagonal[i] : Integer(0);
    if (d == 1) continue;
    keep.push_back(i);
    moduli.push_back(d);
  }
  Presentation p;
  p.group = AbGroup(std::move(moduli));
  if (relations.cols() == 0) {
    p.to_group = Matrix::identity(n);
    p.from_group = Matrix::identity(n);
    return p;
  }
  p.to_group = p.group.normalize_map(s.left.select_rows(keep));
  p.from_group = s.left_inverse.select_columns(keep);
  return p;
}

Presentation quotient(const AbGroup& a, const Matrix& generators) {
  if (generators.rows() != a.ngens()) throw std::invalid_argument("quotient: generator rows mismatch");
  return present(a.ngens(), Matrix::hstack(a.relations(), generators));
}

SubgroupEmbedding::SubgroupEmbedding(const AbGroup& ambient, const Matrix& generators)
    : ambient_(ambient),
      gens_(generators),
      solver_(Matrix::hstack(generators, ambient.relations())) {
  if (generators.rows() != ambient.ngens()) throw std::invalid_argument("SubgroupEmbedding: generator rows mismatch");
  const std::size_t k = generators.cols();
  Matrix ker = solver_.kernel();
  std::vector<std::size_t> top(k);
  for (std::size_t i = 0; i < k; ++i) top[i] = i;
  Matrix rel = ker.select_rows(top);
  Presentation p = present(k, rel);
  group_ = p.group;
  to_group_ = p.to_group;
  inclusion_ = ambient_.normalize_map(generators * p.from_group);
}

std::optional<Vector> SubgroupEmbedding::try_coordinates(const Vector& a) const {
  auto sol = solver_.solve(a);
  if (!sol) return std::nullopt;
  Vector x(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(gens_.cols()));
  return group_.normalize(to_group_ * x);
}

bool SubgroupEmbedding::contains(const Vector& a) const { return solver_.solve(a).has_value(); }

Vector SubgroupEmbedding::coordinates(const Vector& a) const {
  auto c = try_coordinates(a);
  if (!c) throw std::domain_error("SubgroupEmbedding: element not in subgroup");
  return *c;
}

SubgroupEmbedding kernel(const Matrix& f, const AbGroup& a, const AbGroup& b) {
  if (f.rows() != b.ngens() || f.cols() != a.ngens()) throw std::invalid_argument("kernel: shape mismatch");
  Matrix k = kernel_basis(Matrix::hstack(f, b.relations()));
  std::vector<std::size_t> top(a.ngens());
  for (std::size_t i = 0; i < top.size(); ++i) top[i] = i;
  return SubgroupEmbedding(a, k.select_rows(top));
}

SubgroupEmbedding image(const Matrix& f, const AbGroup& a, const AbGroup& b) {
  if (f.rows() != b.ngens() || f.cols() != a.ngens()) throw std::invalid_argument("image: shape mismatch");
  return SubgroupEmbedding(b, f);
}

Presentation cokernel(const Matrix& f, const AbGroup& b) { return quotient(b, f); }

bool is_injective(const Matrix& f, const AbGroup& a, const AbGroup& b) { return kernel(f, a, b).group().is_trivial(); }

bool is_surjective(const Matrix& f, const AbGroup& b) { return cokernel(f, b).group.is_trivial(); }

bool is_isomorphism(const Matrix& f, const AbGroup& a, const AbGroup& b) {
  return is_well_defined(f, a, b) && is_injective(f, a, b) && is_surjective(f, b);
}

Matrix inverse_isomorphism(const Matrix& f, const AbGroup& a, const AbGroup& b) {
  if (!is_isomorphism(f, a, b)) throw std::domain_error("inverse_isomorphism: map is not an isomorphism");
  IntegerSolver solver(Matrix::hstack(f, b.relations()));
  Matrix g(a.ngens(), b.ngens());
  for (std::size_t j = 0; j < b.ngens(); ++j) {
    auto sol = solver.solve(unit_vector(b.ngens(), j));
    if (!sol) throw std::logic_error("inverse_isomorphism: surjective map without preimage");
    for (std::size_t i = 0; i < a.ngens(); ++i) g(i, j) = (*sol)[i];
  }
  return a.normalize_map(g);
}

std::optional<Vector> preimage(const Matrix& f, const AbGroup& b, const Vector& y) {
  auto sol = solve(Matrix::hstack(f, b.relations()), y);
  if (!sol) return std::nullopt;
  return Vector(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(f.cols()));
}

namespace {
SubgroupEmbedding checked_kernel(const Matrix& f, const Matrix& g, const AbGroup& b, const AbGroup& c) {
  if (f.rows() != b.ngens() || g.cols() != b.ngens()) throw std::invalid_argument("Homology: shape mismatch");
  if (!c.normalize_map(g * f).is_zero()) throw std::domain_error("Homology: composite is not zero");
  return kernel(g, b, c);
}
}  // namespace

Homology::Homology(const Matrix& f, const AbGroup& a, const AbGroup& b, const Matrix& g, const AbGroup& c)
    : cycles_(checked_kernel(f, g, b, c)) {
  (void)a;
  Matrix bounds(cycles_.group().ngens(), f.cols());
  for (std::size_t j = 0; j < f.cols(); ++j) bounds.set_column(j, cycles_.coordinates(f.column(j)));
  pres_ = quotient(cycles_.group(), bounds);
  reps_ = b.normalize_map(cycles_.inclusion() * pres_.from_group);
}

Vector Homology::class_of(const Vector& cycle) const {
  return pres_.group.normalize(pres_.to_group * cycles_.coordinates(cycle));
}

}  // namespace mackeykit
