#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mackeykit/gset.hpp"
#include "mackeykit/matrix.hpp"

namespace mackeykit {

/// Code of a transitive span X <- G/H_cls -> Y: `point` is the index
/// x * |Y| + y of the image of eH_cls in X x Y, minimized over the action of
/// the normalizer of H_cls.
struct SpanCode {
  int cls = 0;
  int point = 0;
  auto operator<=>(const SpanCode&) const = default;
};

/// Canonical code of the transitive span whose middle orbit has stabilizer
/// `stab` (any subgroup) at a point mapping to (x, y).
SpanCode span_code(const GSet& x, const GSet& y, Subset stab, int px, int py);

/// Transitive spans X -> Y up to isomorphism, sorted.
std::vector<SpanCode> hom_basis(const GSet& x, const GSet& y);
std::size_t basis_position(const std::vector<SpanCode>& basis, const SpanCode& c);

/// Element of the group-completed hom A(X, Y).
class BurnsideElement {
 public:
  BurnsideElement() = default;
  BurnsideElement(GSet source, GSet target) : source_(std::move(source)), target_(std::move(target)) {}
  static BurnsideElement basis(const GSet& x, const GSet& y, const SpanCode& c);
  static BurnsideElement identity(const GSet& x);

  const GSet& source() const { return source_; }
  const GSet& target() const { return target_; }
  const std::map<SpanCode, Integer>& terms() const { return terms_; }
  Integer coefficient(const SpanCode& c) const;
  void add(const SpanCode& c, const Integer& a);
  bool is_zero() const { return terms_.empty(); }
  /// Coefficients against hom_basis(source, target).
  Vector coordinates() const;
  static BurnsideElement from_coordinates(const GSet& x, const GSet& y, const Vector& v);

  BurnsideElement operator+(const BurnsideElement& o) const;
  BurnsideElement operator-(const BurnsideElement& o) const;
  BurnsideElement operator*(const Integer& s) const;
  bool operator==(const BurnsideElement& o) const;
  std::string to_string() const;

 private:
  GSet source_, target_;
  std::map<SpanCode, Integer> terms_;
};

/// The class of the span X <- U -> Y given by two G-maps out of U.
BurnsideElement span_canonicalize(const GMap& left, const GMap& right);
/// s2 o s1 by pullback of middles.
BurnsideElement compose(const BurnsideElement& s2, const BurnsideElement& s1);
/// Product of spans, from X x X' to Y x Y'.
BurnsideElement tensor(const BurnsideElement& s, const BurnsideElement& t);
BurnsideElement dual(const BurnsideElement& s);
/// X x X -> pt with middle X and legs (diagonal, !).
BurnsideElement evaluation_span(const GSet& x);
/// pt -> X x X with middle X and legs (!, diagonal).
BurnsideElement coevaluation_span(const GSet& x);
/// (ev (x) id) o (id (x) coev) read as an endomorphism of X.
BurnsideElement triangle_composite(const GSet& x);

/// Spans along an orbit map: transfer G/H_s -> G/H_t and restriction back.
BurnsideElement transfer_span(const GroupPtr& g, const OrbitMap& phi);
BurnsideElement restriction_span(const GroupPtr& g, const OrbitMap& phi);

/// Splits an element whose source is coproduct(x1, x2).set.
std::pair<BurnsideElement, BurnsideElement> direct_sum_decompose(const BurnsideElement& e, const GSet& x1,
                                                                 const GSet& x2);
/// Splits an element whose target is coproduct(y1, y2).set.
std::pair<BurnsideElement, BurnsideElement> direct_sum_decompose_target(const BurnsideElement& e, const GSet& y1,
                                                                        const GSet& y2);
/// Reassembles components over the two summands of the source.
BurnsideElement direct_sum_assemble(const BurnsideElement& a, const BurnsideElement& b);
BurnsideElement direct_sum_assemble_target(const BurnsideElement& a, const BurnsideElement& b);

/// marks(i, j) = |(G/H_i)^{H_j}|
Matrix table_of_marks(const FiniteGroup& g);
/// Product on the orbit basis of A(G): column i * n + j holds [G/H_i][G/H_j],
/// computed by composing endomorphisms of the point.
Matrix burnside_ring(const GroupPtr& g);
/// The same table computed from orbit types of products G/H_i x G/H_j.
Matrix burnside_ring_by_products(const GroupPtr& g);

/// Multimaps (x_i)_{i in I} -> z are spans from the product of the feet.
GSet product_of(const GroupPtr& g, const std::vector<GSet>& feet);
std::vector<SpanCode> multimap_basis(const std::vector<GSet>& feet, const GSet& z);

}  // namespace mackeykit
