#include <random>

#include "arrowkernel/error.hpp"
#include "arrowkernel/words.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace arrowkernel;
using testing::W;

TEST_SUITE("words") {

TEST_CASE("parse and format") {
  const auto w = W("1 -1");
  REQUIRE(w.length() == 2);
  CHECK(w[0] == Token{1, Role::Start});
  CHECK(w[1] == Token{1, Role::End});
  CHECK(W("").empty());
  CHECK(W("   \t ").empty());
  CHECK(format_word(W("+3 2 -3 -2")) == "3 2 -3 -2");
  CHECK(format_word(W("")) == "");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(W("1 1"), LetterCountError);
  CHECK_THROWS_AS(W("1 -1 -1"), LetterCountError);
  CHECK_THROWS_AS(W("1"), LetterCountError);
  CHECK_THROWS_AS(W("0 -0"), ZeroLetterError);
  CHECK_THROWS_AS(W("1 x -1"), SyntaxError);
  CHECK_THROWS_AS(W("1 --1"), SyntaxError);
  CHECK_THROWS_AS(W("1 -1.5"), SyntaxError);
}

TEST_CASE("normalize_word") {
  CHECK(format_word(normalize_word(W("3 5 -3 -5"))) == "1 2 -1 -2");
  CHECK(format_word(normalize_word(W("-2 1 2 -1"))) == "-1 2 1 -2");
  CHECK(normalize_word(W("")).empty());
}

TEST_CASE("canonical_form") {
  CHECK(canonical_form(W("2 1 -2 -1")).text() == "1 2 -1 -2");
  CHECK(canonical_form(W("1 -1")) == canonical_form(W("-1 1")));
  CHECK(canonical_form(W("")).arrows() == 0);
  CHECK(canonical_form(W("")).text().empty());
  // Start < End at the first token: the least rotation begins with a Start.
  CHECK(canonical_form(W("-1 2 1 -2")).text().front() == '1');
}

TEST_CASE("canonical key matches the documented order") {
  const auto a = canonical_form(W("1 2 -1 -2")), b = canonical_form(W("1 -1 2 -2"));
  // (1,S)(2,S) vs (1,S)(1,E): 2S > 1E by label first.
  CHECK(b < a);
  CHECK(canonical_form(W("1 -1")) < a);
}

TEST_CASE("reverse and mirror") {
  CHECK(format_word(reverse_word(W("1 2 -1 -2"))) == "-2 -1 2 1");
  CHECK(canonical_form(reverse_word(W("1 2 -1 -2"))) == canonical_form(W("1 2 -1 -2")));
  CHECK(mirror(canonical_form(W("1 -1"))) == canonical_form(W("1 -1")));
  CHECK(format_word(reverse_word(W(""))) == "");
}

TEST_CASE("rotate_word") {
  const auto w = W("1 2 -1 -2");
  CHECK(format_word(rotate_word(w, 1)) == "2 -1 -2 1");
  CHECK(rotate_word(w, -1) == rotate_word(w, 3));
  CHECK(rotate_word(w, 8) == w);
  CHECK(rotate_word(W(""), 5).empty());
}

TEST_CASE("subword") {
  const auto w = W("1 2 -1 3 -2 -3");
  const std::uint32_t k23[] = {2, 3};
  CHECK(format_word(subword(w, k23)) == "1 2 -1 -2");
  const std::uint32_t all[] = {1, 2, 3};
  CHECK(subword(w, all) == normalize_word(w));
  CHECK(subword(w, std::span<const std::uint32_t>{}).empty());
  const std::uint32_t bad[] = {4};
  CHECK_THROWS_AS(subword(w, bad), UnknownLetterError);
}

TEST_CASE("concatenate") {
  CHECK(format_word(concatenate(W("1 -1"), W("1 -1"))) == "1 -1 2 -2");
  CHECK(concatenate(W("1 2 -1 -2"), W("")) == W("1 2 -1 -2"));
  CHECK(canonical_form(concatenate(W(""), W("5 -5"))) == canonical_form(W("1 -1")));
}

TEST_CASE("canonical form agrees with the rotation oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = static_cast<int>(rng() % 7);
    const auto a = oracle::random_word(n, rng), b = oracle::random_word(n, rng);
    const bool same = oracle::canon(a) == oracle::canon(b);
    CHECK((canonical_form(testing::from_oracle(a)) == canonical_form(testing::from_oracle(b))) ==
          same);
    // The canonical text is itself a relabeled rotation of the input.
    CHECK(oracle::canon(testing::to_oracle(canonical_form(testing::from_oracle(a)).word())) ==
          oracle::canon(a));
  }
}

}  // TEST_SUITE
