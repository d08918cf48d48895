#include <algorithm>
#include <iterator>
#include <map>
#include <random>

#include "arrowkernel/pipeline.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace arrowkernel;

namespace {

OrientedGaussWord rand_word(std::mt19937_64& rng, std::size_t max_arrows) {
  return random_word(rng() % (max_arrows + 1), rng);
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("canonical form is invariant under rotation and relabeling") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    const auto w = rand_word(rng, 7);
    const auto c = canonical_form(w);
    CHECK(canonical_form(normalize_word(w)) == c);
    for (std::size_t t = 0; t < w.length(); ++t) CHECK(canonical_form(rotate_word(w, t)) == c);
    CHECK(canonical_form(reverse_word(reverse_word(w))) == c);
    CHECK(mirror(mirror(c)) == c);
    CHECK(canonical_form(c.word()) == c);
  }
}

TEST_CASE("parse/format round trip on enumerated words") {
  const auto t = enumerate_diagrams(1, 5, Filter::All);
  for (const auto& x : t.entries()) {
    CHECK(format_word(parse_word(x.text())) == x.text());
    CHECK(canonical_form(parse_word(x.text())) == x);
  }
}

TEST_CASE("nested sub-words") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = normalize_word(rand_word(rng, 7));
    const auto letters = w.letters();
    std::vector<std::uint32_t> a, b;
    for (auto l : letters) {
      if (rng() % 2) a.push_back(l);
      if (rng() % 2) b.push_back(l);
    }
    std::vector<std::uint32_t> ab;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(ab));
    // Letters of sub_A(w) are renumbered by first appearance; map A∩B across.
    const auto sa = subword(w, a);
    std::vector<std::uint32_t> image;
    std::map<std::uint32_t, std::uint32_t> rename;
    for (const auto& t : w.tokens())
      if (std::binary_search(a.begin(), a.end(), t.letter))
        rename.try_emplace(t.letter, static_cast<std::uint32_t>(rename.size()) + 1);
    for (auto l : ab) image.push_back(rename.at(l));
    std::sort(image.begin(), image.end());
    CHECK(subword(w, ab) == subword(sa, image));
  }
}

TEST_CASE("projection coherence") {
  std::mt19937_64 rng(71);
  const auto t = enumerate_diagrams(2, 3, Filter::All);
  std::vector<mpz_class> coeffs(t.size());
  for (auto& c : coeffs) c = static_cast<long>(rng() % 11) - 5;
  const Functional f(t, coeffs);
  for (RelatorFamily fam : {RelatorFamily::R1, RelatorFamily::SII, RelatorFamily::WII,
                            RelatorFamily::SIII, RelatorFamily::WIII})
    for (int trial = 0; trial < 20; ++trial) {
      const auto u = rand_word(rng, 2);
      std::vector<std::size_t> cuts;
      for (int c = 0; c + 1 < family_arcs(fam); ++c) cuts.push_back(rng() % (u.length() + 1));
      std::sort(cuts.begin(), cuts.end());
      const int v = static_cast<int>(rng() % family_variants(fam));
      const auto r = instantiate_relator(fam, v, u, cuts);
      CHECK(eval_on_combination(f, r) == eval_on_combination(f, project_combination(r, 2, 3, Filter::All)));
    }
}

TEST_CASE("kernel functionals vanish on every generated column") {
  for (RelatorFamily fam : {RelatorFamily::SIII, RelatorFamily::WIII, RelatorFamily::SII,
                            RelatorFamily::WII})
    for (Filter filter : {Filter::Connected, Filter::Irreducible}) {
      const auto t = enumerate_diagrams(2, 4, filter);
      const auto cols = generate_relators(fam, 2, 4, filter);
      const auto k = table_kernel(t, cols, nullptr);
      for (const auto& v : k.vectors()) {
        const Functional f(t, v);
        for (const auto& c : cols) CHECK(eval_on_combination(f, c.combination) == 0);
      }
    }
}

TEST_CASE("invariance and additivity over (3,4)") {
  for (const char* moves : {"ri,siii", "ri,wiii"}) {
    const auto fam = parse_family(std::string(moves).substr(3));
    const auto t = enumerate_diagrams(3, 4, Filter::Connected);
    const auto k = table_kernel(t, generate_relators(fam, 3, 4, Filter::Connected), nullptr);
    REQUIRE(k.dim() > 0);
    VerifyOptions o;
    o.moves = parse_move_list(moves);
    o.trials = 60;
    o.steps = 15;
    o.seed = 8;
    const auto r = verify_invariance(t, k.vectors(), o);
    CHECK_MESSAGE(r.passed, format_report(r));

    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 30; ++trial) {
      const auto v = rand_word(rng, 4), w = rand_word(rng, 4);
      const auto vw = concatenate(v, w);
      for (const auto& row : k.vectors()) {
        const Functional f(t, row);
        CHECK(evaluate_functional(f, vw) == evaluate_functional(f, v) + evaluate_functional(f, w));
      }
    }
  }
}

TEST_CASE("thread count does not change tables") {
  const auto a = enumerate_diagrams(2, 5, Filter::Connected, 1);
  const auto b = enumerate_diagrams(2, 5, Filter::Connected, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

}  // TEST_SUITE
