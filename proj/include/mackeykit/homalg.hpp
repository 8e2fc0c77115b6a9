#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mackeykit/convolution.hpp"

namespace mackeykit {

/// The free module on orbits G/H_{k_1}, ..., G/H_{k_r}, modelled as the
/// shift R(G/H_{k_a} x -) of each summand (isomorphic to R box A_{G/H_{k_a}},
/// see free_evaluation).  R acts through the second factor.
struct FreeModule {
  GreenFunctor ring;
  std::vector<int> generators;  // subgroup class of each basis orbit
  GreenModule module;

  const MackeyFunctor& underlying() const { return module.underlying(); }
  /// Start of the block of generator a inside level j.
  std::size_t offset(int j, std::size_t a) const { return offsets[j][a]; }
  std::vector<std::vector<std::size_t>> offsets;
};

FreeModule free_module(const GreenFunctor& r, const std::vector<int>& orbit_classes);
/// One basis orbit per orbit of X.
FreeModule free_module(const GreenFunctor& r, const GSet& x);
/// The basis element of generator a, an element of F(G/H_{k_a}).
Vector free_generator(const FreeModule& f, std::size_t a);
/// The module map F -> M sending generator a to elements[a] in M(G/H_{k_a}).
MackeyMorphism free_module_map(const FreeModule& f, const GreenModule& m, const std::vector<Vector>& elements);

/// Module homomorphisms as a subgroup of the Mackey hom group.
struct ModuleHom {
  HomGroup mackey;
  SubgroupEmbedding sub;  // inside mackey.group()
  const AbGroup& group() const { return sub.group(); }
  MackeyMorphism morphism(const Vector& coords) const { return mackey.morphism(sub.inclusion() * coords); }
};
ModuleHom module_hom(const GreenModule& source, const GreenModule& target);

/// M(X) -> hom_R(R^X, M) for X = disjoint union of the generator orbits.
struct FreeAdjunction {
  ModuleHom hom;
  AbGroup value;  // M(X) as the sum of the levels
  Matrix to_hom;
  bool is_iso = false;
};
FreeAdjunction free_adjunction(const FreeModule& f, const GreenModule& m);

/// Order in which cover() scans levels for generators.
enum class CoverOrder { kTopDown, kBottomUp };

struct Cover {
  FreeModule free;
  std::vector<Vector> elements;  // image of each generator
  MackeyMorphism map;            // free -> M, levelwise onto
};
/// A free module mapping onto M: generators of M's levels are visited in the
/// given order and one free generator is added whenever a level generator is
/// not yet in the image.
Cover cover(const GreenModule& m, CoverOrder order = CoverOrder::kTopDown);

/// The sub-module of M given by a sub-Mackey functor of its underlying
/// functor (typically a kernel).
GreenModule restrict_module(const GreenModule& m, const MackeyMorphism& inclusion);

struct FreeResolution {
  GreenModule target;
  std::vector<FreeModule> modules;            // P_0, ..., P_len
  std::vector<std::vector<Vector>> images;    // generator images: in target (p = 0) or P_{p-1}
  std::vector<MackeyMorphism> differentials;  // d_p: P_p -> P_{p-1} at index p - 1
  MackeyMorphism augmentation;                // P_0 -> target
  /// Whether the last kernel vanished, so the resolution is complete.
  bool finite = false;
};
FreeResolution resolution(const GreenModule& n, int length, CoverOrder order = CoverOrder::kTopDown);
/// Exactness of P_len -> ... -> P_0 -> N -> 0 away from P_len (and at P_len
/// too when the resolution is finite).
std::optional<std::string> resolution_failure(const FreeResolution& res);

/// A bounded chain complex of Mackey functors, objects[p] in degree p, with
/// differentials[p]: objects[p] -> objects[p - 1] (index 0 unused).
struct ChainComplex {
  std::vector<MackeyFunctor> objects;
  std::vector<MackeyMorphism> differentials;
};
std::optional<std::string> chain_complex_failure(const ChainComplex& c);
/// H_p for p = 0 .. objects.size() - 1.
std::vector<MackeyFunctor> chain_homology(const ChainComplex& c);

/// M box_R P for the free modules of a resolution, in the shift model.
ChainComplex tensor_with_resolution(const GreenModule& m, const FreeResolution& res);

struct TorResult {
  FreeResolution resolution;
  ChainComplex complex;
  std::vector<MackeyFunctor> groups;  // Tor_0 .. Tor_pmax
};
TorResult tor(const GreenModule& m, const GreenModule& n, int pmax, CoverOrder order = CoverOrder::kTopDown);

/// M box_R N as the quotient of M box N by [psi; rm (x) n - m (x) rn].
struct RelBox {
  BoxProduct box;
  QuotientResult quotient;
  const MackeyFunctor& object() const { return quotient.object; }
};
RelBox rel_box(const GreenModule& m, const GreenModule& n);
/// The coequalizer of the two actions (M box R) box N => M box N, built from
/// the associator; an independent presentation of the same object.
QuotientResult rel_box_coequalizer(const GreenModule& m, const GreenModule& n);

/// Tor_0 -> M box_R N, m_O over an orbit O of G/H_k x G/H_j going to
/// [O -> G/H_j; m_O (x) res n] with n the image of the generator.
IsoWitness tor0_witness(const TorResult& t, const GreenModule& m, const RelBox& rb);

}  // namespace mackeykit
