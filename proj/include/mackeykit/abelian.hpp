#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mackeykit/matrix.hpp"

namespace mackeykit {

/// Finitely generated abelian group in diagonal form: generator i has order
/// moduli[i], with 0 meaning infinite order.  Moduli equal to 1 never occur.
class AbGroup {
 public:
  AbGroup() = default;
  explicit AbGroup(std::vector<Integer> moduli);
  static AbGroup free(std::size_t rank);

  std::size_t ngens() const { return moduli_.size(); }
  const std::vector<Integer>& moduli() const { return moduli_; }
  const Integer& modulus(std::size_t i) const { return moduli_[i]; }
  bool is_trivial() const { return moduli_.empty(); }
  bool is_free() const;
  std::size_t free_rank() const;
  /// Order of the group, or 0 when infinite.
  Integer order() const;

  Vector normalize(const Vector& v) const;
  bool equal(const Vector& a, const Vector& b) const;
  bool is_zero(const Vector& v) const;
  /// Reduces the rows of a map into this group.
  Matrix normalize_map(const Matrix& m) const;
  /// Relation matrix diag(moduli) restricted to torsion generators (ngens x t).
  Matrix relations() const;

  /// Canonical invariant factors (torsion part ascending, then zeros for the
  /// free rank).  Two groups are isomorphic iff these agree.
  std::vector<Integer> invariants() const;
  std::string to_string() const;

  bool operator==(const AbGroup& o) const { return moduli_ == o.moduli_; }

 private:
  std::vector<Integer> moduli_;
};

AbGroup direct_sum(const std::vector<AbGroup>& parts);
bool isomorphic(const AbGroup& a, const AbGroup& b);

/// Whether the matrix defines a homomorphism A -> B (respects torsion).
bool is_well_defined(const Matrix& f, const AbGroup& a, const AbGroup& b);
bool maps_equal(const Matrix& f, const Matrix& g, const AbGroup& target);

/// Z^n modulo the column span of `relations`, brought to diagonal form.
struct Presentation {
  AbGroup group;
  Matrix to_group;    // group.ngens() x n
  Matrix from_group;  // n x group.ngens()
};

Presentation present(std::size_t n, const Matrix& relations);
/// Tensor product; the pair (i, j) of generators sits at index i * b.ngens() + j.
Presentation tensor(const AbGroup& a, const AbGroup& b);
/// A / <generators>, generators given as columns in A's coordinates.
Presentation quotient(const AbGroup& a, const Matrix& generators);

/// A subgroup of `ambient`, generated by the given columns, with its own
/// diagonal presentation.
class SubgroupEmbedding {
 public:
  SubgroupEmbedding(const AbGroup& ambient, const Matrix& generators);

  const AbGroup& group() const { return group_; }
  const AbGroup& ambient() const { return ambient_; }
  /// ambient.ngens() x group.ngens()
  const Matrix& inclusion() const { return inclusion_; }
  bool contains(const Vector& a) const;
  /// Coordinates of an ambient element in the subgroup; throws if absent.
  Vector coordinates(const Vector& a) const;
  std::optional<Vector> try_coordinates(const Vector& a) const;

 private:
  AbGroup ambient_;
  AbGroup group_;
  Matrix gens_;
  Matrix inclusion_;
  Matrix to_group_;
  IntegerSolver solver_;
};

SubgroupEmbedding kernel(const Matrix& f, const AbGroup& a, const AbGroup& b);
SubgroupEmbedding image(const Matrix& f, const AbGroup& a, const AbGroup& b);
Presentation cokernel(const Matrix& f, const AbGroup& b);
bool is_injective(const Matrix& f, const AbGroup& a, const AbGroup& b);
bool is_surjective(const Matrix& f, const AbGroup& b);
bool is_isomorphism(const Matrix& f, const AbGroup& a, const AbGroup& b);
/// Inverse of an isomorphism A -> B; throws std::domain_error otherwise.
Matrix inverse_isomorphism(const Matrix& f, const AbGroup& a, const AbGroup& b);
/// Some preimage of `y` under f, if one exists.
std::optional<Vector> preimage(const Matrix& f, const AbGroup& b, const Vector& y);

/// ker(g) / im(f) for A -f-> B -g-> C with g f = 0.
class Homology {
 public:
  Homology(const Matrix& f, const AbGroup& a, const AbGroup& b, const Matrix& g, const AbGroup& c);

  const AbGroup& group() const { return pres_.group; }
  /// Class of a cycle in B.
  Vector class_of(const Vector& cycle) const;
  /// A cycle representing each generator of the homology, nB x nH.
  const Matrix& representatives() const { return reps_; }
  const SubgroupEmbedding& cycles() const { return cycles_; }

 private:
  SubgroupEmbedding cycles_;
  Presentation pres_;
  Matrix reps_;
};

}  // namespace mackeykit
