#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mackeykit/homalg.hpp"

namespace mackeykit {

/// A chain complex of Mackey functors split into summands, each with a
/// homological degree and a filtration weight.  F_p is the sum of the
/// summands of weight <= p; differential blocks may only keep or lower the
/// weight, so every F_p is a subcomplex.
struct FilteredComplex {
  struct Summand {
    int degree = 0;
    int weight = 0;
    MackeyFunctor object;
  };
  struct Block {
    std::size_t from = 0, to = 0;  // summand indices, degree drops by one
    MackeyMorphism map;
  };
  std::vector<Summand> summands;
  std::vector<Block> blocks;
};

std::optional<std::string> filtered_complex_failure(const FilteredComplex& f);
/// Weight = degree, one summand per degree.
FilteredComplex skeletal_filtration(const ChainComplex& c);

struct PageEntry {
  int p = 0, q = 0;
  MackeyFunctor object;
};
/// d_r from (p, q) to (p - r, q + r - 1).
struct PageDifferential {
  int p = 0, q = 0;
  MackeyMorphism map;
};
struct SpectralPage {
  int r = 1;
  std::vector<PageEntry> entries;
  std::vector<PageDifferential> differentials;
  /// The entry at (p, q); nullptr outside the computed range (where it is 0).
  const MackeyFunctor* at(int p, int q) const;
};

/// Pages E_1 .. E_rmax with E_r^{p,q} the image of
/// H_{p+q}(F_p / F_{p-r}) -> H_{p+q}(F_{p+r-1} / F_{p-1}).
std::vector<SpectralPage> ss_pages(const FilteredComplex& f, int rmax);
/// The first page after which nothing changes: r = wmax - wmin + 1.
int stable_page(const FilteredComplex& f);
/// d_r d_r = 0 and E_{r+1} matching the homology of (E_r, d_r) at every level.
std::optional<std::string> page_consistency_failure(const std::vector<SpectralPage>& pages);

/// gr_p H_n = F_p H_n / F_{p-1} H_n, indexed like page entries (q = n - p).
std::vector<PageEntry> associated_graded(const FilteredComplex& f);
/// Compares the stable page with the associated graded levelwise.
std::optional<std::string> convergence_failure(const FilteredComplex& f);

}  // namespace mackeykit
