#pragma once

#include <string>
#include <vector>

#include "mackeykit/abelian.hpp"
#include "mackeykit/burnside.hpp"

namespace mackeykit {

/// w o (v_1 x ... x v_n) for w: y_1 x ... x y_n -> z and v_i out of the
/// product of the i-th block of feet.
BurnsideElement multimap_compose(const BurnsideElement& w, const std::vector<BurnsideElement>& v);

/// The coend pairing for the feet x_J grouped into blocks by an active map
/// J -> I (block[j] is the image of foot j; blocks must be non-decreasing,
/// and a block may be empty).  Generators are triples (y_I, w, v) with y_I a
/// tuple of orbits, w in A(prod y_I, z) and v_i in A(prod x_{J_i}, y_i);
/// relations identify (w o f, v) with (w, f o v) for spans f between orbits
/// in a single slot.  The pairing should be an isomorphism onto
/// A(prod x_J, z).
struct CoendCheck {
  std::size_t generators = 0;
  std::size_t relations = 0;
  std::size_t target_rank = 0;
  AbGroup quotient;
  bool relations_vanish = false;
  bool is_iso = false;
  bool ok() const { return relations_vanish && is_iso; }
};
CoendCheck promonoidal_check(const GroupPtr& g, const std::vector<GSet>& feet, const std::vector<int>& block,
                             int block_count, const GSet& z);

/// Multimaps (x_i) -> (y_j) over a map I -> J against the product over j of
/// multimaps x_{I_j} -> y_j: transitive spans prod-block-wise between
/// coproducts that respect the blocks, compared with the disjoint union of
/// the per-block bases through direct-sum splitting.
struct MultimapProductCheck {
  std::size_t lhs = 0;  // block-diagonal transitive codes
  std::size_t rhs = 0;  // sum of per-block basis sizes
  bool bijective = false;
  bool round_trip = false;
  bool ok() const { return bijective && round_trip; }
};
MultimapProductCheck multimap_product_check(const GroupPtr& g, const std::vector<std::vector<GSet>>& blocks,
                                            const std::vector<GSet>& targets);

/// One failed comparison in a sweep, with the orbit labels involved.
struct PromonoidalFailure {
  std::string kind;  // "coend" or "product"
  std::vector<std::string> feet;
  std::vector<int> block;  // coend: block of each foot; product: the cut
  int block_count = 0;
  std::vector<std::string> targets;
};
struct PromonoidalSweep {
  std::size_t coend_cases = 0;
  std::size_t product_cases = 0;
  std::vector<PromonoidalFailure> failures;
};
/// Every tuple of at most max_feet orbit feet: the coend pairing for every
/// non-decreasing assignment into one or two blocks and every orbit target,
/// and the multimap product check for every split into two non-empty
/// contiguous blocks and every pair of orbit targets.
PromonoidalSweep promonoidal_sweep(const GroupPtr& g, int max_feet);

}  // namespace mackeykit
