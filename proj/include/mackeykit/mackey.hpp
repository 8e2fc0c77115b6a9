#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mackeykit/abelian.hpp"
#include "mackeykit/burnside.hpp"
#include "mackeykit/gset.hpp"

namespace mackeykit {

/// Raised when data fails a Mackey, Green or module axiom; the message names
/// the offending maps or cell.
class VerificationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Validation {
  kNone,        // trust the data (internal constructions)
  kStructural,  // torsion, functoriality, automorphisms, double cosets
  kFull,        // structural plus randomized span-pair composition
};

struct ValidationOptions {
  Validation level = Validation::kFull;
  int span_pairs = 200;
  std::uint64_t seed = 1;
};

/// Structure maps on the generating orbit maps of the group: for
/// generating_maps()[i] = phi: s -> t, res[i] is M(t) -> M(s) and tr[i] is
/// M(s) -> M(t).  For an automorphism, res is the conjugation and tr must be
/// res of the inverse.
struct MackeyData {
  std::vector<AbGroup> levels;
  std::vector<Matrix> res;
  std::vector<Matrix> tr;
};

/// An ordinary Mackey functor: one abelian group per subgroup class and
/// restriction/transfer matrices along every orbit map.  Column vectors
/// throughout, so a map A -> B is (gens of B) x (gens of A).
class MackeyFunctor {
 public:
  MackeyFunctor() = default;

  /// Closes generating data under composition.  Throws VerificationError
  /// with a counterexample when validation is requested and fails.
  static MackeyFunctor from_generators(GroupPtr group, MackeyData data,
                                       const ValidationOptions& opts = {Validation::kNone, 0, 1});
  static MackeyFunctor zero(GroupPtr group);

  const GroupPtr& group() const { return d_->group; }
  std::size_t level_count() const { return d_->levels.size(); }
  const AbGroup& level(int k) const { return d_->levels[k]; }
  std::vector<std::size_t> ranks() const;
  const Matrix& res(const OrbitMap& m) const;
  const Matrix& tr(const OrbitMap& m) const;
  const Matrix& res_at(std::size_t map_index) const { return d_->res[map_index]; }
  const Matrix& tr_at(std::size_t map_index) const { return d_->tr[map_index]; }
  MackeyData generating_data() const;
  bool is_zero() const;

  /// M(X) as the direct sum over the orbits of X, in orbit order.
  AbGroup value(const GSet& x) const;
  std::vector<std::size_t> offsets(const GSet& x) const;
  /// The matrix M(X) -> M(Y) of a span X -> Y.
  Matrix eval_span(const BurnsideElement& e) const;
  /// Transfer along a G-map, M(X) -> M(Y).
  Matrix pushforward(const GMap& f) const;
  /// Restriction along a G-map, M(Y) -> M(X).
  Matrix pullback(const GMap& f) const;

  std::string summary() const;

 private:
  struct Data {
    GroupPtr group;
    std::vector<AbGroup> levels;
    std::vector<Matrix> res;  // by map index
    std::vector<Matrix> tr;
  };
  std::shared_ptr<const Data> d_;
};

/// Runs the requested checks; returns a description of the first failure.
std::optional<std::string> validation_failure(const MackeyFunctor& m, const ValidationOptions& opts);
/// Builds from level groups, res/tr on the non-automorphism generating maps
/// (in generating_maps() order) and conjugations on the automorphisms.
MackeyFunctor mackey_from_levels(GroupPtr group, std::vector<AbGroup> levels, const std::vector<Matrix>& res,
                                 const std::vector<Matrix>& tr, const std::vector<Matrix>& conj,
                                 const ValidationOptions& opts = {});

/// eval(res_phi) eval(tr_psi) against the pullback expansion, for every pair
/// of maps into a common orbit whose sources are the classes a and b.
std::optional<std::string> double_coset_failure(const MackeyFunctor& m, int a, int b);

class MackeyMorphism {
 public:
  MackeyMorphism() = default;
  /// Throws VerificationError if the components do not commute with the
  /// structure maps (unless check is false).
  MackeyMorphism(MackeyFunctor source, MackeyFunctor target, std::vector<Matrix> components, bool check = true);
  static MackeyMorphism identity(const MackeyFunctor& m);
  static MackeyMorphism zero(const MackeyFunctor& source, const MackeyFunctor& target);

  const MackeyFunctor& source() const { return source_; }
  const MackeyFunctor& target() const { return target_; }
  const Matrix& at(int k) const { return components_[k]; }
  const std::vector<Matrix>& components() const { return components_; }
  /// The induced map M(X) -> N(X).
  Matrix on_gset(const GSet& x) const;

  bool is_isomorphism() const;
  bool is_zero() const;
  bool operator==(const MackeyMorphism& o) const;
  MackeyMorphism operator+(const MackeyMorphism& o) const;
  MackeyMorphism operator-(const MackeyMorphism& o) const;

 private:
  MackeyFunctor source_, target_;
  std::vector<Matrix> components_;
};

/// g o f
MackeyMorphism compose(const MackeyMorphism& g, const MackeyMorphism& f);
std::optional<std::string> morphism_failure(const MackeyFunctor& source, const MackeyFunctor& target,
                                            const std::vector<Matrix>& components);

/// A morphism with a verified two-sided inverse.
struct IsoWitness {
  MackeyMorphism forward;
  MackeyMorphism inverse;
};
/// Computes the levelwise inverse and checks both composites; throws
/// VerificationError if f is not invertible.
IsoWitness make_iso_witness(const MackeyMorphism& f);

struct SubobjectResult {
  MackeyFunctor object;
  MackeyMorphism inclusion;
};
struct QuotientResult {
  MackeyFunctor object;
  MackeyMorphism projection;
};
struct DirectSumResult {
  MackeyFunctor object;
  std::vector<MackeyMorphism> injections;
  std::vector<MackeyMorphism> projections;
};

SubobjectResult kernel(const MackeyMorphism& f);
QuotientResult cokernel(const MackeyMorphism& f);
SubobjectResult image(const MackeyMorphism& f);
DirectSumResult direct_sum(const std::vector<MackeyFunctor>& parts);
/// Sub-functor generated by elements: gens[k] holds columns in M(G/H_k).
SubobjectResult generated_subfunctor(const MackeyFunctor& m, const std::vector<Matrix>& gens);
/// M modulo the sub-functor generated by the given elements.
QuotientResult quotient_by_elements(const MackeyFunctor& m, const std::vector<Matrix>& gens);
/// Homology ker(g) / im(f) of M -f-> N -g-> P, levelwise.
struct HomologyResult {
  MackeyFunctor object;
  std::vector<Homology> levels;
};
HomologyResult homology(const MackeyMorphism& f, const MackeyMorphism& g);

/// A_X: level j is free on hom_basis(X, G/H_j).
MackeyFunctor representable(const GSet& x);

/// Natural transformations M -> N as an abelian group, with conversion to
/// and from explicit morphisms.
class HomGroup {
 public:
  HomGroup(MackeyFunctor source, MackeyFunctor target);
  const AbGroup& group() const { return embedding_->group(); }
  MackeyMorphism morphism(const Vector& coords) const;
  Vector coordinates(const MackeyMorphism& f) const;
  const MackeyFunctor& source() const { return source_; }
  const MackeyFunctor& target() const { return target_; }

 private:
  Vector flatten(const std::vector<Matrix>& comps) const;
  MackeyFunctor source_, target_;
  std::vector<std::size_t> offset_;
  AbGroup ambient_;
  std::shared_ptr<SubgroupEmbedding> embedding_;
};

HomGroup hom_mackey(const MackeyFunctor& m, const MackeyFunctor& n);

/// The morphism A_X -> N classified by an element of N(X).
MackeyMorphism yoneda_morphism(const GSet& x, const MackeyFunctor& n, const Vector& element);
struct YonedaWitness {
  HomGroup hom;
  Matrix to_hom;  // N(X) -> hom(A_X, N)
  bool is_iso = false;
};
YonedaWitness yoneda(const GSet& x, const MackeyFunctor& n);

/// A finitely generated abelian group V with a G-action, one matrix per
/// group element.
struct Representation {
  GroupPtr group;
  AbGroup module;
  std::vector<Matrix> action;

  void validate() const;
  static Representation trivial(GroupPtr g, const AbGroup& v);
  /// Z[X] or (Z/n)[X] permuting a basis indexed by the points of X.
  static Representation permutation(const GSet& x, const Integer& modulus = 0);
  /// Cyclic group Z/n (or Z) on which g acts by the sign of a homomorphism
  /// G -> {+1, -1} given by its kernel.
  static Representation sign(GroupPtr g, Subset kernel, const Integer& modulus = 0);
};

/// FP(V): level G/H is V^H, restriction is inclusion of fixed points moved by
/// the coset representative, transfer is the coset sum.
MackeyFunctor fixed_point_mackey(const Representation& v);
/// The H-fixed points of V as a subgroup of V.
SubgroupEmbedding fixed_submodule(const Representation& v, Subset h);

}  // namespace mackeykit
