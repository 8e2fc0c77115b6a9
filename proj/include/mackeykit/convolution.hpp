#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mackeykit/mackey.hpp"

namespace mackeykit {

/// The box product M box N.  Level j is generated by symbols [psi; m (x) n]
/// for every orbit map psi: G/H_k -> G/H_j and m in M(G/H_k), n in N(G/H_k),
/// subject to [psi alpha; m' (x) res_alpha n] = [psi; tr_alpha m' (x) n] and
/// its mirror image for each generating map alpha, plus torsion.
///
/// The raw generator space of level j is the direct sum of the blocks
/// M_k (x) N_k over maps psi into j (in map order), with the pair (a, b) of
/// generators at a * rank(N_k) + b inside its block.
class BoxProduct {
 public:
  BoxProduct(MackeyFunctor m, MackeyFunctor n);

  const MackeyFunctor& object() const { return object_; }
  const MackeyFunctor& left() const { return m_; }
  const MackeyFunctor& right() const { return n_; }
  const GroupPtr& group() const { return m_.group(); }

  std::size_t raw_size(int j) const { return levels_[j].offsets.back(); }
  std::size_t block_offset(const OrbitMap& psi) const;
  /// Raw generator space -> level group, and a lift back.
  const Matrix& to_level(int j) const { return levels_[j].pres.to_group; }
  const Matrix& from_level(int j) const { return levels_[j].pres.from_group; }

  /// [psi; m (x) n] in coordinates of the level psi.target.
  Vector pair(const OrbitMap& psi, const Vector& m, const Vector& n) const;
  /// Raw coordinates of [psi; m (x) n].
  Vector raw_pair(const OrbitMap& psi, const Vector& m, const Vector& n) const;
  /// The external product of m in M(U) and n in N(V), in (M box N)(U x V).
  Vector external(const GSet& u, const Vector& m, const GSet& v, const Vector& n) const;

 private:
  struct Level {
    std::vector<std::size_t> maps;     // map indices of the blocks
    std::vector<std::size_t> offsets;  // block starts plus the total
    Presentation pres;
  };
  MackeyFunctor m_, n_, object_;
  std::vector<Level> levels_;
  std::vector<std::size_t> block_of_map_;  // map index -> block within its target level
};

/// f box g : M box N -> M' box N'.
MackeyMorphism box_map(const MackeyMorphism& f, const MackeyMorphism& g, const BoxProduct& source,
                       const BoxProduct& target);

/// A_pt box M -> M.  The box's left factor must be representable(pt).
IsoWitness box_unit_iso(const BoxProduct& unit_box);
/// M box N -> N box M.
IsoWitness box_comm_iso(const BoxProduct& mn, const BoxProduct& nm);

struct TripleBox {
  BoxProduct mn, mn_p, np, m_np;  // M box N, (M box N) box P, N box P, M box (N box P)
  IsoWitness assoc;               // (M box N) box P -> M box (N box P)
};
TripleBox box_associator(const MackeyFunctor& m, const MackeyFunctor& n, const MackeyFunctor& p);

/// A_X box A_Y -> A_{X x Y}, s (x) t over psi going to psi_* Delta^* (s x t).
struct RepresentableMonoidal {
  BoxProduct box;
  MackeyFunctor product;  // representable(product_set(X, Y))
  IsoWitness iso;
};
RepresentableMonoidal representable_monoidal(const GSet& x, const GSet& y);

/// F(A_X, M): level j is M(X x G/H_j).
MackeyFunctor internal_hom_rep(const GSet& x, const MackeyFunctor& m);

/// M box A_X -> F(A_X, M), the natural iso (M box A_X)(Y) = M(X x Y).
struct FreeEvaluation {
  BoxProduct box;
  MackeyFunctor shifted;
  IsoWitness iso;
};
FreeEvaluation free_evaluation(const MackeyFunctor& m, const GSet& x);

/// M(G/e) (x) N(G/e) -> (M box N)(G/e) and its compatibility with the
/// conjugation action of G.
struct FreeOrbitMonoidal {
  Presentation tensor;  // M(G/e) (x) N(G/e)
  Matrix map;           // tensor.group -> (M box N)(G/e)
  bool is_iso = false;
  bool equivariant = false;
};
FreeOrbitMonoidal free_orbit_monoidal(const BoxProduct& box);

/// A commutative Green functor as levelwise ring data: table(k) is
/// rank x rank^2 with the product e_a e_b in column a * rank + b.
class GreenFunctor {
 public:
  GreenFunctor() = default;
  const MackeyFunctor& underlying() const { return r_; }
  const GroupPtr& group() const { return r_.group(); }
  const Matrix& table(int k) const { return tables_[k]; }
  const std::vector<Matrix>& tables() const { return tables_; }
  const Vector& unit(int k) const { return units_[k]; }
  const std::vector<Vector>& units() const { return units_; }
  Vector multiply(int k, const Vector& x, const Vector& y) const;

  /// R box R -> R.
  MackeyMorphism mult(const BoxProduct& rr) const;
  /// A_pt -> R.
  MackeyMorphism unit_map() const;

 private:
  friend GreenFunctor green_from_levelwise(const MackeyFunctor&, std::vector<Matrix>, std::vector<Vector>);
  MackeyFunctor r_;
  std::vector<Matrix> tables_;
  std::vector<Vector> units_;
};

/// First violated Green axiom, naming the level and generators.
std::optional<std::string> green_failure(const MackeyFunctor& r, const std::vector<Matrix>& tables,
                                         const std::vector<Vector>& units);
/// Throws VerificationError on failure.
GreenFunctor green_from_levelwise(const MackeyFunctor& r, std::vector<Matrix> tables, std::vector<Vector> units);
/// Reads the levelwise rings off a multiplication R box R -> R and a unit
/// A_pt -> R (both must be morphisms), then validates.
GreenFunctor green_from_mult(const BoxProduct& rr, const MackeyMorphism& mult, const MackeyMorphism& unit);

/// A_pt with the product Delta^*(s x t).
GreenFunctor burnside_green(const GroupPtr& g);
/// Fixed points of the ring Z (or Z/n) with trivial action.
GreenFunctor fixed_point_green(const GroupPtr& g, const Integer& modulus = 0);

/// A module over a Green functor: table(k) is rank(M_k) x (rank(R_k) rank(M_k))
/// with r_a m_b in column a * rank(M_k) + b.
class GreenModule {
 public:
  GreenModule() = default;
  const GreenFunctor& ring() const { return r_; }
  const MackeyFunctor& underlying() const { return m_; }
  const Matrix& table(int k) const { return tables_[k]; }
  const std::vector<Matrix>& tables() const { return tables_; }
  Vector act(int k, const Vector& r, const Vector& m) const;
  /// R box M -> M.
  MackeyMorphism action(const BoxProduct& rm) const;

 private:
  friend GreenModule module_from_levelwise(const GreenFunctor&, const MackeyFunctor&, std::vector<Matrix>);
  GreenFunctor r_;
  MackeyFunctor m_;
  std::vector<Matrix> tables_;
};

std::optional<std::string> module_failure(const GreenFunctor& r, const MackeyFunctor& m,
                                          const std::vector<Matrix>& tables);
GreenModule module_from_levelwise(const GreenFunctor& r, const MackeyFunctor& m, std::vector<Matrix> tables);
GreenModule module_from_action(const GreenFunctor& r, const BoxProduct& rm, const MackeyMorphism& action);
/// R as a module over itself.
GreenModule regular_module(const GreenFunctor& r);
/// Any Mackey functor as a module over the Burnside Green functor.
GreenModule burnside_module(const GreenFunctor& burnside, const MackeyFunctor& m);
/// A module over fixed_point_green(g, n) whose generator 1 acts as the
/// identity; requires tr res = index on M.
GreenModule scalar_module(const GreenFunctor& r, const MackeyFunctor& m);

}  // namespace mackeykit
