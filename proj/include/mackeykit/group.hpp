#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace mackeykit {

using Element = int;
/// A subset of group elements as a bitmask (bit g set iff g is a member).
using Subset = std::uint64_t;

constexpr std::size_t kMaxGroupOrder = 64;

inline bool contains(Subset s, Element g) { return (s >> g) & 1u; }
int popcount(Subset s);
std::vector<Element> members(Subset s);

struct SubgroupClass {
  Subset representative = 0;
  std::vector<Subset> conjugates;  // sorted
  Subset normalizer = 0;
  std::size_t order = 0;
  std::size_t weyl_order = 0;
  std::string label;
};

/// Left cosets gH of a class representative H, labelled by their smallest
/// element in increasing order.  Coset 0 is H itself.
struct CosetSpace {
  std::size_t size = 0;
  std::vector<int> label_of;       // element -> coset
  std::vector<Element> rep;        // coset -> smallest element
  std::vector<int> action;         // action[g * size + c] = coset of g * rep[c]
  int act(Element g, int c) const { return action[static_cast<std::size_t>(g) * size + c]; }
};

/// The equivariant map G/H_source -> G/H_target sending eH_source to the coset
/// `point` of H_target; `point` must be fixed by H_source.
struct OrbitMap {
  int source = 0;
  int target = 0;
  int point = 0;
  bool operator==(const OrbitMap& o) const {
    return source == o.source && target == o.target && point == o.point;
  }
  bool operator<(const OrbitMap& o) const {
    if (source != o.source) return source < o.source;
    if (target != o.target) return target < o.target;
    return point < o.point;
  }
};

/// One orbit of the pullback of two orbit maps into a common orbit, given by
/// its class and the two legs out of it.
struct PullbackOrbit {
  int cls = 0;
  OrbitMap to_first;   // into the source of the first map
  OrbitMap to_second;  // into the source of the second map
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
 public:
  /// Multiplication table; the identity may sit anywhere and is relabelled to 0.
  static GroupPtr from_table(const std::vector<std::vector<int>>& table, std::string name = "");
  /// Permutation generators in one-line notation (0- or 1-based).
  static GroupPtr from_permutations(int degree, const std::vector<std::vector<int>>& generators,
                                    std::string name = "");
  static GroupPtr named(const std::string& name);
  static std::vector<std::string> named_groups();

  const std::string& name() const { return name_; }
  std::size_t order() const { return order_; }
  Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  Element conj(Element g, Element h) const { return mul(mul(g, h), inv(g)); }
  const std::vector<int>& table() const { return table_; }
  std::size_t element_order(Element g) const;
  bool is_abelian() const;

  Subset all() const;
  bool is_subgroup(Subset s) const;
  Subset closure(Subset s) const;
  /// g S g^-1
  Subset conjugate(Subset s, Element g) const;
  Subset normalizer(Subset s) const;

  const std::vector<SubgroupClass>& classes() const { return classes_; }
  std::size_t class_count() const { return classes_.size(); }
  const SubgroupClass& subgroup_class(int k) const { return classes_[k]; }
  Subset rep(int k) const { return classes_[k].representative; }
  const std::vector<Subset>& subgroups() const { return subgroups_; }
  int class_of(Subset s) const;
  /// Some g with g S g^-1 equal to the representative of S's class.
  Element conjugator(Subset s) const;
  int class_by_label(const std::string& label) const;
  int trivial_class() const { return 0; }
  int top_class() const { return static_cast<int>(classes_.size()) - 1; }

  /// Smallest representatives of the double cosets H g K, in increasing order.
  std::vector<Element> double_cosets(Subset h, Subset k) const;
  /// Elements of H g K.
  Subset double_coset(Subset h, Element g, Subset k) const;

  const CosetSpace& cosets(int k) const { return cosets_[k]; }
  /// Cosets of H_target fixed by H_source (the possible points of an orbit map).
  const std::vector<int>& map_points(int source, int target) const;
  /// All orbit maps source -> target, by increasing point.
  std::vector<OrbitMap> maps(int source, int target) const;
  std::size_t map_count() const { return map_total_; }
  /// Dense index of a map among all orbit maps.
  std::size_t map_index(const OrbitMap& m) const;
  const OrbitMap& map_at(std::size_t index) const { return all_maps_[index]; }
  const std::vector<OrbitMap>& all_maps() const { return all_maps_; }

  OrbitMap identity(int k) const { return OrbitMap{k, k, 0}; }
  /// psi o phi
  OrbitMap compose(const OrbitMap& psi, const OrbitMap& phi) const;
  bool is_iso(const OrbitMap& m) const { return m.source == m.target; }
  OrbitMap inverse(const OrbitMap& iso) const;
  /// The automorphism gH -> g n H of G/H_k (n must normalize H_k).
  OrbitMap automorphism(int k, Element n) const;
  /// Maps between distinct classes with H_source maximal in a conjugate of
  /// H_target, one per orbit under automorphisms on both sides, followed by
  /// the non-identity automorphisms of every orbit.  These generate all maps.
  const std::vector<OrbitMap>& generating_maps() const { return generating_; }
  /// Element representing the image coset of a map.
  Element point_rep(const OrbitMap& m) const { return cosets_[m.target].rep[m.point]; }
  /// Orbits of the pullback of two maps with a common target, ordered by
  /// the smallest pullback point they contain.
  std::vector<PullbackOrbit> pullback(const OrbitMap& first, const OrbitMap& second) const;

  std::string describe() const;

 private:
  FiniteGroup() = default;
  void build(std::vector<int> table, std::string name);
  void enumerate_subgroups();
  void build_cosets_and_maps();
  std::string subgroup_label(Subset s) const;

  std::string name_;
  std::size_t order_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<Subset> subgroups_;       // sorted
  std::vector<int> subgroup_class_;     // parallel to subgroups_
  std::vector<Element> subgroup_conj_;  // parallel to subgroups_
  std::vector<SubgroupClass> classes_;
  std::vector<CosetSpace> cosets_;
  std::vector<std::vector<int>> map_points_;  // [source * n + target]
  std::vector<std::size_t> map_offset_;       // [source * n + target]
  std::vector<OrbitMap> all_maps_;
  std::size_t map_total_ = 0;
  std::vector<OrbitMap> generating_;
};

/// Canonical minimal representative of the N(H_k)-orbit of a point, where
/// `act(n, x)` is the action on the candidate points.
template <typename Act>
int normalizer_orbit_min(const FiniteGroup& g, int k, int x, Act&& act) {
  int best = x;
  Subset n = g.subgroup_class(k).normalizer;
  for (Element e = 0; e < static_cast<Element>(g.order()); ++e)
    if (contains(n, e)) {
      int y = act(e, x);
      if (y < best) best = y;
    }
  return best;
}

}  // namespace mackeykit
