#pragma once

#include <utility>
#include <vector>

#include "mackeykit/convolution.hpp"

namespace mackeykit {

/// K_0 of finite G-sets over X.  Isomorphism classes of G-sets over X form
/// the free commutative monoid on transitive ones, so K_0 is free on them.
/// A transitive G/H_l -> X is recorded as (l, y) with y the image of eH_l,
/// a point of X^{H_l}, minimized over the normalizer of H_l.
struct SliceK0 {
  GSet base;
  std::vector<std::pair<int, int>> basis;  // sorted (class, point)
  AbGroup group;

  std::size_t index_of(int cls, int point) const;
};

SliceK0 k0_of_slice(const GSet& x);
/// The code of the transitive G-set over X with stabilizer `stab` at a point
/// mapping to y.
std::pair<int, int> slice_code(const GSet& x, Subset stab, int y);

/// Levels K_0(G-sets over G/H), transfer by postcomposition, restriction by
/// pullback.
MackeyFunctor k0_mackey(const GroupPtr& g);
/// k0_mackey with the product given by pulling back along the diagonal of
/// G/H (fibre product over G/H).
GreenFunctor k0_green(const GroupPtr& g);

struct BpqResult {
  GreenFunctor k0;
  GreenFunctor burnside;
  IsoWitness iso;  // k0 -> burnside
};
/// Matches each slice class (l, y) over G/H_j with the span pt <- G/H_l -> G/H_j
/// and checks that the result is an isomorphism of Green functors.  Throws
/// VerificationError naming the level on failure.
BpqResult bpq_verify(const GroupPtr& g);

}  // namespace mackeykit
