#pragma once

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "mackeykit/mackeykit.hpp"

namespace mktest {

using namespace mackeykit;

inline const std::vector<std::string>& battery() {
  static const std::vector<std::string> names{"trivial", "C2", "C3", "C4", "C2xC2", "S3", "C6"};
  return names;
}

inline GroupPtr group(const std::string& name) { return group_from_json(Json(name)); }

inline std::vector<GSet> orbits(const GroupPtr& g) {
  std::vector<GSet> out;
  for (int k = 0; k < static_cast<int>(g->class_count()); ++k) out.push_back(GSet::orbit(g, k));
  return out;
}

/// A G-set with at most `max_orbits` orbits (possibly empty).
inline GSet random_gset(const GroupPtr& g, std::mt19937_64& rng, int max_orbits = 2) {
  std::uniform_int_distribution<int> count(0, max_orbits), cls(0, static_cast<int>(g->class_count()) - 1);
  std::vector<std::pair<int, int>> c;
  for (int i = count(rng); i > 0; --i) c.emplace_back(cls(rng), 1);
  return GSet::from_orbits(g, c);
}

/// A nonempty G-set with randomly shuffled point labels.
inline GSet random_shuffled_gset(const GroupPtr& g, std::mt19937_64& rng, int max_orbits = 2) {
  GSet x;
  do x = random_gset(g, rng, max_orbits);
  while (x.size() == 0);
  std::vector<int> perm(x.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::shuffle(perm.begin(), perm.end(), rng);
  return relabel(x, perm);
}

inline BurnsideElement random_element(const GSet& x, const GSet& y, std::mt19937_64& rng, int bound = 3) {
  std::uniform_int_distribution<int> coef(-bound, bound);
  BurnsideElement e(x, y);
  for (const auto& c : hom_basis(x, y)) {
    int a = coef(rng);
    if (a != 0) e.add(c, a);
  }
  return e;
}

inline Vector random_vector(std::size_t n, std::mt19937_64& rng, int bound = 4) {
  std::uniform_int_distribution<int> coef(-bound, bound);
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(coef(rng));
  return v;
}

/// Levelwise invariant factors; two functors agreeing here have isomorphic levels.
inline std::vector<std::vector<Integer>> level_invariants(const MackeyFunctor& m) {
  std::vector<std::vector<Integer>> out;
  for (int k = 0; k < static_cast<int>(m.level_count()); ++k) out.push_back(m.level(k).invariants());
  return out;
}

/// A handful of Mackey functors of different shapes over g.
inline std::vector<MackeyFunctor> sample_functors(const GroupPtr& g) {
  std::vector<MackeyFunctor> out;
  out.push_back(representable(GSet::point(g)));
  out.push_back(fixed_point_mackey(Representation::trivial(g, AbGroup::free(1))));
  out.push_back(fixed_point_mackey(Representation::trivial(g, AbGroup({Integer(2)}))));
  out.push_back(fixed_point_mackey(Representation::permutation(GSet::orbit(g, 0))));
  out.push_back(representable(GSet::orbit(g, g->top_class() > 0 ? 1 : 0)));
  return out;
}

}  // namespace mktest
