#include <random>

#include "arrowkernel/counting.hpp"
#include "arrowkernel/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace arrowkernel;
using testing::W;

namespace {

const ArrowDiagram kArrow = canonical_form(W("1 -1"));
const ArrowDiagram kCross = canonical_form(W("1 2 -1 -2"));
const ArrowDiagram kProduct = canonical_form(W("1 -1 2 -2"));

}  // namespace

TEST_SUITE("counting") {

TEST_CASE("count_occurrences examples") {
  CHECK(count_occurrences(W("1 2 -1 -2"), kArrow) == 2);
  CHECK(count_occurrences(W("1 2 -1 -2"), kCross) == 1);
  CHECK(count_occurrences(W("1 2 -1 3 -2 -3"), kCross) == 2);
  CHECK(count_occurrences(W("1 -1"), kCross) == 0);
  CHECK(count_occurrences(W(""), kArrow) == 0);
}

TEST_CASE("count_occurrences agrees with subset brute force") {
  std::mt19937_64 rng(5);
  const auto patterns = enumerate_diagrams(1, 3, Filter::All);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = static_cast<int>(rng() % 7);
    const auto host = oracle::random_word(n, rng);
    const auto h = testing::from_oracle(host);
    for (const auto& p : patterns.entries())
      CHECK(count_occurrences(h, p) == oracle::count(host, testing::to_oracle(p.word())));
  }
}

TEST_CASE("subdiagram_counts follows table order") {
  const auto t = enumerate_diagrams(1, 3, Filter::All);
  const auto host = W("1 2 -1 3 -2 -3");
  const auto counts = subdiagram_counts(t, host);
  REQUIRE(counts.size() == t.size());
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(counts[i] == count_occurrences(host, t[i]));
}

TEST_CASE("functional evaluation") {
  const auto t = enumerate_diagrams(2, 3, Filter::All);
  std::vector<mpz_class> coeffs(t.size(), 0);
  coeffs[*t.find(kCross)] = 1;
  const Functional f(t, coeffs);
  CHECK(evaluate_functional(f, W("1 2 -1 3 -2 -3")) == 2);
  const Functional zero(t, std::vector<mpz_class>(t.size(), 0));
  CHECK(evaluate_functional(zero, W("1 2 -1 3 -2 -3")) == 0);
  CHECK_THROWS_AS(Functional(t, std::vector<mpz_class>(3)), DimensionError);
}

TEST_CASE("tilde evaluation") {
  const auto t = enumerate_diagrams(2, 3, Filter::All);
  std::vector<mpz_class> coeffs(t.size(), 0);
  coeffs[*t.find(kCross)] = 1;
  const Functional f(t, coeffs);
  LinearCombination c;
  c.add(kCross, 1);
  CHECK(eval_on_combination(f, c) == 1);
  LinearCombination other;
  other.add(kProduct, 1);
  CHECK(eval_on_combination(f, other) == 0);
  LinearCombination cancel;
  cancel.add(kCross, 2);
  cancel.add(kCross, -2);
  CHECK(cancel.empty());
  CHECK(eval_on_combination(f, cancel) == 0);
  LinearCombination outside;
  outside.add(kArrow, 5);
  CHECK(eval_on_combination(f, outside) == 0);
}

TEST_CASE("linear combinations store no zeros") {
  LinearCombination a;
  a.add(kArrow, 3);
  a.add(kCross, 1);
  LinearCombination b;
  b.add(kArrow, 3);
  const auto d = a - b;
  CHECK(d.size() == 1);
  CHECK(d.coefficient(kCross) == 1);
  CHECK(d.coefficient(kArrow) == 0);
  CHECK((-a).coefficient(kArrow) == -3);
  CHECK((a + (-a)).empty());
}

TEST_CASE("subset expansion identity") {
  std::mt19937_64 rng(9);
  const auto t = enumerate_diagrams(1, 3, Filter::All);
  for (int trial = 0; trial < 40; ++trial) {
    const auto host = testing::from_oracle(oracle::random_word(static_cast<int>(rng() % 7), rng));
    const auto expansion = subword_expansion(host, 1, 3);
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::vector<mpz_class> e(t.size(), 0);
      e[i] = 1;
      CHECK(eval_on_combination(Functional(t, e), expansion) == count_occurrences(host, t[i]));
    }
  }
}

TEST_CASE("for_each_subword visits every subset in range once") {
  const auto host = W("1 2 -1 3 -2 -3 4 -4");
  std::size_t visits = 0;
  for_each_subword(host, 1, 2, [&](std::span<const Token> s) {
    CHECK((s.size() == 2 || s.size() == 4));
    ++visits;
  });
  CHECK(visits == 4 + 6);
}

TEST_CASE("rotation invariance and reflection covariance") {
  std::mt19937_64 rng(21);
  const auto patterns = enumerate_diagrams(1, 3, Filter::All);
  for (int trial = 0; trial < 40; ++trial) {
    const auto host = testing::from_oracle(oracle::random_word(static_cast<int>(rng() % 6) + 1, rng));
    const auto shift = static_cast<std::ptrdiff_t>(rng() % host.length());
    for (const auto& p : patterns.entries()) {
      const auto c = count_occurrences(host, p);
      CHECK(count_occurrences(rotate_word(host, shift), p) == c);
      CHECK(count_occurrences(reverse_word(host), mirror(p)) == c);
    }
  }
}

TEST_CASE("additivity holds for connected patterns, not for the product pattern") {
  std::mt19937_64 rng(33);
  const auto conn = enumerate_diagrams(1, 3, Filter::Connected);
  for (int trial = 0; trial < 40; ++trial) {
    const auto v = testing::from_oracle(oracle::random_word(static_cast<int>(rng() % 4), rng));
    const auto w = testing::from_oracle(oracle::random_word(static_cast<int>(rng() % 4), rng));
    const auto vw = concatenate(v, w);
    for (const auto& p : conn.entries())
      CHECK(count_occurrences(vw, p) == count_occurrences(v, p) + count_occurrences(w, p));
  }
  const auto one = W("1 -1");
  CHECK(count_occurrences(concatenate(one, one), kProduct) == 1);
  CHECK(count_occurrences(one, kProduct) + count_occurrences(one, kProduct) == 0);
}

}  // TEST_SUITE
