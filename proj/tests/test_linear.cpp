#include <functional>

#include "support.hpp"

using namespace mktest;

namespace {

Integer det(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t j = 0; j < n; ++j)
      if (j != c) cols.push_back(j);
    Integer minor = det(a.select_rows(rows).select_columns(cols));
    d += (c % 2 ? -1 : 1) * a(0, c) * minor;
  }
  return d;
}

void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> s;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (s.size() == k) {
      fn(s);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      s.push_back(i);
      rec(i + 1);
      s.pop_back();
    }
  };
  rec(0);
}

// Invariant factors from gcds of minors.
std::vector<Integer> determinantal_invariants(const Matrix& a) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    Integer g = 0;
    subsets(a.rows(), k, [&](const std::vector<std::size_t>& rs) {
      subsets(a.cols(), k, [&](const std::vector<std::size_t>& cs) {
        Integer d = det(a.select_rows(rs).select_columns(cs));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      });
    });
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng, int bound = 6) {
  Matrix m(r, c);
  std::uniform_int_distribution<int> d(-bound, bound);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("Smith form agrees with determinantal divisors") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> dim(1, 4);
    Matrix a = random_matrix(dim(rng), dim(rng), rng);
    if (trial % 5 == 0) a = a * Integer(2);
    SmithForm s = smith_normal_form(a, kLeft | kRight | kLeftInverse);
    std::vector<Integer> diag(s.diagonal.begin(), s.diagonal.begin() + s.rank);
    for (auto& d : diag) d = abs(d);
    CHECK(diag == determinantal_invariants(a));
    for (std::size_t i = 1; i < s.rank; ++i) CHECK(s.diagonal[i] % s.diagonal[i - 1] == 0);
    Matrix d = s.left * a * s.right;
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j) CHECK(d(i, j) == (i == j && i < s.diagonal.size() ? s.diagonal[i] : Integer(0)));
    CHECK((s.left * s.left_inverse).is_identity());
  }
}

TEST_CASE("kernel basis and solver") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix a = random_matrix(3, 5, rng, 4);
    Matrix k = kernel_basis(a);
    CHECK((a * k).is_zero());
    CHECK(k.cols() == 5 - smith_normal_form(a, kNoTransform).rank);
    Vector x = random_vector(5, rng);
    Vector b = a * x;
    auto sol = solve(a, b);
    REQUIRE(sol);
    CHECK(a * *sol == b);
    // an unreachable right-hand side
    Matrix two = Matrix{{2, 0}, {0, 2}};
    CHECK_FALSE(solve(two, Vector{1, 0}));
  }
}

TEST_CASE("abelian groups: presentations, kernels, homology") {
  Presentation p = present(2, Matrix{{2, 4}, {6, 8}});
  CHECK(p.group.invariants() == std::vector<Integer>{2, 4});
  AbGroup z4({Integer(4)}), z2({Integer(2)}), z({Integer(0)});
  CHECK(isomorphic(direct_sum({z2, z2}), AbGroup({Integer(2), Integer(2)})));
  CHECK_FALSE(isomorphic(z4, direct_sum({z2, z2})));
  // Z -2-> Z -> Z/2
  Matrix two{{2}};
  CHECK(cokernel(two, z).group.invariants() == std::vector<Integer>{2});
  CHECK(is_injective(two, z, z));
  CHECK_FALSE(is_surjective(two, z));
  // Z/4 -2-> Z/4: kernel and image both Z/2
  CHECK(kernel(two, z4, z4).group().invariants() == std::vector<Integer>{2});
  CHECK(image(two, z4, z4).group().invariants() == std::vector<Integer>{2});
  CHECK_FALSE(is_well_defined(Matrix{{1}}, z2, z4));
  CHECK(is_well_defined(two, z2, z4));
  Homology h(two, z4, z4, two, z4);
  CHECK(h.group().is_trivial());
  Homology h2(Matrix(1, 0), AbGroup(), z4, two, z4);
  CHECK(h2.group().invariants() == std::vector<Integer>{2});
  CHECK(tensor(z4, AbGroup({Integer(6)})).group.invariants() == std::vector<Integer>{2});
  CHECK(tensor(z, z2).group.invariants() == std::vector<Integer>{2});
  Matrix iso{{2, 1}, {1, 1}};
  Matrix inv = inverse_isomorphism(iso, AbGroup::free(2), AbGroup::free(2));
  CHECK((iso * inv).is_identity());
  CHECK_THROWS_AS(inverse_isomorphism(two, z, z), std::domain_error);
}

TEST_CASE("subgroup embedding coordinates round-trip") {
  std::mt19937_64 rng(13);
  AbGroup amb({Integer(0), Integer(0), Integer(6)});
  for (int trial = 0; trial < 20; ++trial) {
    Matrix gens = random_matrix(3, 2, rng, 5);
    SubgroupEmbedding s(amb, gens);
    Vector c = random_vector(2, rng);
    Vector a = amb.normalize(gens * c);
    REQUIRE(s.contains(a));
    CHECK(amb.equal(s.inclusion() * s.coordinates(a), a));
  }
}
