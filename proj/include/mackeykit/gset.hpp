#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "mackeykit/group.hpp"

namespace mackeykit {

/// A finite G-set stored as an explicit action table.  Orbits are found
/// eagerly; each orbit is identified with G/H_k for a class representative
/// H_k by choosing as basepoint the smallest point whose stabilizer is H_k.
class GSet {
 public:
  struct Orbit {
    int cls = 0;
    std::vector<int> points;  // points[c] is the point for coset c of H_cls
  };

  GSet() = default;
  /// action[g * size + x] = g . x
  GSet(GroupPtr group, std::size_t size, std::vector<int> action);

  static GSet orbit(GroupPtr group, int k);
  static GSet point(GroupPtr group);
  static GSet empty(GroupPtr group);
  /// Disjoint union of orbits G/H_k in the given order, repeated by multiplicity.
  static GSet from_orbits(GroupPtr group, const std::vector<std::pair<int, int>>& counts);

  const GroupPtr& group() const { return d_->group; }
  std::size_t size() const { return d_->size; }
  int act(Element g, int x) const { return d_->action[static_cast<std::size_t>(g) * d_->size + x]; }
  const std::vector<int>& action() const { return d_->action; }

  const std::vector<Orbit>& orbits() const { return d_->orbits; }
  std::size_t orbit_count() const { return d_->orbits.size(); }
  int orbit_of(int x) const { return d_->orbit_of[x]; }
  int coset_of(int x) const { return d_->coset_of[x]; }
  /// (class, multiplicity) sorted by class.
  std::vector<std::pair<int, int>> orbit_type() const;
  Subset stabilizer(int x) const;
  bool is_fixed(int x, Subset h) const;

  /// The orbit map G/H_cls -> (orbit of y) sending eH_cls to y, where y is
  /// fixed by H_cls.  Returns the orbit index together with the map.
  std::pair<int, OrbitMap> map_from_orbit(int cls, int y) const;

  bool operator==(const GSet& o) const;
  bool operator!=(const GSet& o) const { return !(*this == o); }

 private:
  struct Data {
    GroupPtr group;
    std::size_t size = 0;
    std::vector<int> action;
    std::vector<Orbit> orbits;
    std::vector<int> orbit_of;
    std::vector<int> coset_of;
  };
  std::shared_ptr<const Data> d_;
};

class GMap {
 public:
  GMap() = default;
  GMap(GSet source, GSet target, std::vector<int> map);  // validates equivariance
  static GMap identity(const GSet& x);

  const GSet& source() const { return source_; }
  const GSet& target() const { return target_; }
  int operator()(int x) const { return map_[x]; }
  const std::vector<int>& values() const { return map_; }
  bool is_bijective() const;

 private:
  GSet source_, target_;
  std::vector<int> map_;
};

/// g o f
GMap compose(const GMap& g, const GMap& f);

/// The G-map G/H_s -> G/H_t of an orbit map.
GMap orbit_gmap(const GroupPtr& g, const OrbitMap& m);
/// f x g on products.
GMap product_map(const GMap& f, const GMap& g);

struct ProductResult {
  GSet set;
  GMap first, second;
};
/// Points are pairs (x, y) at index x * |Y| + y.
ProductResult product(const GSet& x, const GSet& y);
GSet product_set(const GSet& x, const GSet& y);

struct CoproductResult {
  GSet set;
  GMap left, right;
};
/// Points of X come first, then points of Y shifted by |X|.
CoproductResult coproduct(const GSet& x, const GSet& y);

struct PullbackResult {
  GSet set;
  GMap first, second;
};
/// Pairs (x, y) with f(x) = g(y), in lexicographic order.
PullbackResult pullback(const GMap& f, const GMap& g);

std::vector<int> fixed_points(const GSet& x, Subset h);

struct OrbitDecomposition {
  std::vector<std::pair<int, int>> type;
  GSet canonical;  // from_orbits(type)
  GMap iso;        // X -> canonical
};
OrbitDecomposition orbit_decompose(const GSet& x);

std::optional<GMap> find_isomorphism(const GSet& x, const GSet& y);

/// The same G-set with point x renamed perm[x].
GSet relabel(const GSet& x, const std::vector<int>& perm);

}  // namespace mackeykit
