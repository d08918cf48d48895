#include <random>

#include "arrowkernel/error.hpp"
#include "arrowkernel/zkernel.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace arrowkernel;

namespace {

using Rows = std::vector<std::vector<mpz_class>>;

const std::vector<std::vector<long>> kStrong = {{3, 0, 0, 0, 0},  {0, 1, -1, 0, 0}, {0, 0, 1, 1, 0},
                                                {0, 0, 1, 1, 0},  {0, 0, 0, -1, 1}, {0, 1, 0, 0, 1},
                                                {1, 0, 1, 1, 0}};

const std::vector<std::vector<long>> kWeak = {
    {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 1, 2, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0},
    {0, 0, 0, 1, -1, 0, -1, 0, 1, 0, 0, -1, 0, -1},
    {0, 0, 0, 1, 0, -1, 0, -1, 1, 0, -1, 0, -1, 0},
    {1, 0, 1, 1, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0},
    {0, 0, 0, -1, 1, 1, 1, 1, -1, 0, 1, 1, 1, 1},
    {0, 0, -1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0}};

std::vector<mpz_class> vec(std::initializer_list<long> xs) {
  return std::vector<mpz_class>(xs.begin(), xs.end());
}

std::vector<std::vector<mpq_class>> to_q(const IntMatrix& a) {
  std::vector<std::vector<mpq_class>> q;
  for (const auto& row : a.to_dense()) q.emplace_back(row.begin(), row.end());
  return q;
}

IntMatrix random_matrix(std::size_t m, std::size_t n, int range, double density,
                        std::mt19937_64& rng) {
  std::vector<std::vector<long>> rows(m, std::vector<long>(n, 0));
  std::uniform_real_distribution<double> coin(0, 1);
  std::uniform_int_distribution<long> entry(-range, range);
  for (auto& r : rows)
    for (auto& x : r)
      if (coin(rng) < density) x = entry(rng);
  return IntMatrix::from_rows(rows);
}

// Properties every returned basis must have, checked against oracles.
void check_kernel(const IntMatrix& a, const KernelBasis& k) {
  CHECK(k.ambient() == a.rows());
  CHECK(k.dim() + oracle::rank_q(to_q(a)) == a.rows());
  for (const auto& v : k.vectors()) CHECK(annihilates(a, v));
  std::vector<std::vector<mpq_class>> basis;
  for (const auto& v : k.vectors()) basis.emplace_back(v.begin(), v.end());
  CHECK(oracle::rank_q(basis) == k.dim());
  if (k.dim() > 0 && a.rows() <= 12) CHECK(oracle::minor_gcd(k.vectors()) == 1);
  // Hermite shape: pivots move right, are positive, and dominate the column above.
  std::size_t last = 0;
  for (std::size_t r = 0; r < k.dim(); ++r) {
    const auto& v = k.vectors()[r];
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    REQUIRE(p < v.size());
    if (r) CHECK(p > last);
    last = p;
    CHECK(v[p] > 0);
    for (std::size_t s = 0; s < r; ++s) {
      CHECK(k.vectors()[s][p] >= 0);
      CHECK(k.vectors()[s][p] < v[p]);
    }
  }
}

}  // namespace

TEST_SUITE("zkernel") {

TEST_CASE("IntMatrix basics") {
  IntMatrix a(3);
  a.append_column({{0, 2}, {2, 0}, {0, 3}});
  CHECK(a.at(0, 0) == 5);
  CHECK(a.at(2, 0) == 0);
  CHECK(a.nonzeros() == 1);
  CHECK_THROWS_AS(a.append_column({{3, 1}}), IndexError);
  const auto b = IntMatrix::from_rows(std::vector<std::vector<long>>{{5}, {0}, {0}});
  CHECK(a == b);
}

TEST_CASE("trivial kernels") {
  CHECK(left_kernel(IntMatrix::from_rows(std::vector<std::vector<long>>{{1, 0}, {0, 1}})).dim() == 0);
  const auto z = left_kernel(IntMatrix::from_rows(std::vector<std::vector<long>>(4, {0, 0, 0})));
  CHECK(z.dim() == 4);
  CHECK(left_kernel(IntMatrix(3)).dim() == 3);
  CHECK(rank(IntMatrix::from_rows(std::vector<std::vector<long>>{{1, 0}, {0, 1}})) == 2);
  CHECK(rank(IntMatrix::from_rows(std::vector<std::vector<long>>(3, {0, 0}))) == 0);
}

TEST_CASE("printed strong matrix") {
  const auto a = IntMatrix::from_rows(kStrong);
  CHECK(rank(a) == 4);
  const auto k = left_kernel(a);
  REQUIRE(k.dim() == 3);
  check_kernel(a, k);
  CHECK(contains_vector(k, vec({1, 0, 3, 0, 0, 0, -3})));
  CHECK(contains_vector(k, vec({0, 1, 1, 0, 1, -1, 0})));
  CHECK(contains_vector(k, vec({0, 0, 1, -1, 0, 0, 0})));
  CHECK(contains_vector(k, vec({0, 0, 0, 0, 0, 0, 0})));
  CHECK_FALSE(contains_vector(k, vec({1, 0, 0, 0, 0, 0, 0})));
  // The three printed vectors generate the whole lattice.
  CHECK(KernelBasis::from_vectors(7, {vec({1, 0, 3, 0, 0, 0, -3}), vec({0, 1, 1, 0, 1, -1, 0}),
                                      vec({0, 0, 1, -1, 0, 0, 0})})
            .vectors() == k.vectors());
}

TEST_CASE("printed weak matrix") {
  const auto a = IntMatrix::from_rows(kWeak);
  const auto k = left_kernel(a);
  REQUIRE(k.dim() == 1);
  check_kernel(a, k);
  const auto g = vec({-1, 1, -1, -1, 1, -1, 3});
  std::vector<mpz_class> neg;
  for (const auto& x : g) neg.push_back(-x);
  CHECK((k.vectors()[0] == g || k.vectors()[0] == neg));
}

TEST_CASE("contains_vector and identity") {
  const auto k = left_kernel(IntMatrix::from_rows(std::vector<std::vector<long>>{{1, 0}, {0, 1}}));
  CHECK_FALSE(contains_vector(k, vec({1, 0})));
  CHECK(contains_vector(k, vec({0, 0})));
  CHECK_THROWS_AS(contains_vector(k, vec({0})), DimensionError);
}

TEST_CASE("saturation") {
  // x = (1, 1) spans the kernel; (2, 2) alone would not be saturated.
  const auto k = KernelBasis::from_vectors(2, {vec({2, 2})});
  CHECK(k.vectors()[0] == vec({2, 2}));
  const auto sat = left_kernel(IntMatrix::from_rows(std::vector<std::vector<long>>{{2}, {-2}}));
  REQUIRE(sat.dim() == 1);
  CHECK(sat.vectors()[0] == vec({1, 1}));
  CHECK_THROWS_AS(KernelBasis::from_vectors(2, {vec({1})}), DimensionError);
}

TEST_CASE("hermite normal form") {
  const auto h = hermite_normal_form({vec({2, 4, 6}), vec({1, 2, 4}), vec({3, 6, 10})}, 3);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == vec({1, 2, 0}));
  CHECK(h[1] == vec({0, 0, 2}));
}

TEST_CASE("random matrices against oracles") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 1 + rng() % 9, n = rng() % 8;
    const auto a = random_matrix(m, n, trial % 2 ? 3 : 40, 0.5, rng);
    const auto k = left_kernel(a);
    check_kernel(a, k);
    CHECK(rank(a) == oracle::rank_q(to_q(a)));
  }
}

TEST_CASE("rank-deficient and tall random matrices") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    // Rows are integer combinations of a few seeds, so kernels are large.
    const std::size_t m = 6 + rng() % 6, n = 3 + rng() % 6, r = 1 + rng() % 3;
    Rows seeds(r, std::vector<mpz_class>(n));
    for (auto& s : seeds)
      for (auto& x : s) x = static_cast<long>(rng() % 7) - 3;
    Rows rows(m, std::vector<mpz_class>(n, 0));
    for (auto& row : rows)
      for (const auto& s : seeds) {
        const long c = static_cast<long>(rng() % 5) - 2;
        for (std::size_t j = 0; j < n; ++j) row[j] += c * s[j];
      }
    const auto a = IntMatrix::from_rows(rows);
    check_kernel(a, left_kernel(a));
  }
}

TEST_CASE("determinism") {
  std::mt19937_64 rng(29);
  const auto a = random_matrix(40, 30, 5, 0.2, rng);
  CHECK(left_kernel(a).vectors() == left_kernel(a).vectors());
}

TEST_CASE("large sparse matrix") {
  std::mt19937_64 rng(31);
  const auto a = random_matrix(300, 200, 4, 0.03, rng);
  const auto k = left_kernel(a);
  CHECK(k.dim() + rank(a) == 300);
  for (const auto& v : k.vectors()) CHECK(annihilates(a, v));
}

TEST_CASE("mirror constraints") {
  const auto a = IntMatrix::from_rows(std::vector<std::vector<long>>{{1}, {1}, {0}, {0}});
  MirrorReport r;
  r.pairs = {{0, 1}, {2, 3}};
  r.partner = {1, 0, 3, 2};
  const auto c = add_mirror_constraints(a, r, {});
  CHECK(c.cols() == 3);
  CHECK(left_kernel(c).dim() == 1);  // only (0,0,1,1) survives
  CHECK(add_mirror_constraints(a, r, {{0, 1}, {3, 2}}) == a);
  CHECK(left_kernel(add_mirror_constraints(a, r, {{1, 0}})).dim() == 2);
  MirrorReport self;
  self.self_mirror = {0, 1, 2, 3};
  self.partner = {0, 1, 2, 3};
  CHECK(add_mirror_constraints(a, self, {}) == a);
  MirrorReport bad = r;
  bad.pairs.push_back({0, 9});
  CHECK_THROWS_AS(add_mirror_constraints(a, bad, {}), IndexError);
  MirrorReport small;
  small.partner = {0};
  small.self_mirror = {0};
  CHECK_THROWS_AS(add_mirror_constraints(a, small, {}), DimensionError);
}

TEST_CASE("memory limit") {
  std::mt19937_64 rng(37);
  const auto a = random_matrix(60, 20, 1000000, 0.5, rng);
  KernelOptions tight;
  tight.memory_limit = 1;
  CHECK_THROWS_AS(left_kernel(a, tight), Error);
}

}  // TEST_SUITE
