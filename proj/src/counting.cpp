#include "arrowkernel/counting.hpp"

#include <algorithm>
#include <string>

#include "arrowkernel/error.hpp"

namespace arrowkernel {

void LinearCombination::add(const ArrowDiagram& x, std::int64_t coef) {
  if (coef == 0) return;
  auto [it, fresh] = terms_.try_emplace(x, coef);
  if (fresh) return;
  it->second += coef;
  if (it->second == 0) terms_.erase(it);
}

void LinearCombination::add(const LinearCombination& other, std::int64_t scale) {
  for (const auto& [x, c] : other.terms_) add(x, c * scale);
}

std::int64_t LinearCombination::coefficient(const ArrowDiagram& x) const {
  auto it = terms_.find(x);
  return it == terms_.end() ? 0 : it->second;
}

LinearCombination LinearCombination::operator-() const {
  LinearCombination r;
  r.add(*this, -1);
  return r;
}

Functional::Functional(const DiagramTable& table, std::vector<mpz_class> coeffs)
    : table_(&table), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != table.size())
    throw DimensionError("functional has " + std::to_string(coeffs_.size()) +
                         " coefficients but the table has " +
                         std::to_string(table.size()) + " entries");
}

void for_each_subword(const OrientedGaussWord& host, std::size_t lo,
                      std::size_t hi,
                      const std::function<void(std::span<const Token>)>& fn) {
  const std::vector<std::uint32_t> letters = host.letters();
  const std::size_t n = letters.size();
  hi = std::min(hi, n);
  if (lo > hi) return;

  std::vector<std::uint16_t> id(host.length());
  for (std::size_t p = 0; p < host.length(); ++p)
    id[p] = static_cast<std::uint16_t>(
        std::lower_bound(letters.begin(), letters.end(), host[p].letter) -
        letters.begin());

  std::vector<char> keep(n);
  std::vector<Token> buf;
  buf.reserve(2 * hi);
  std::vector<std::size_t> pick;
  for (std::size_t k = lo; k <= hi; ++k) {
    pick.resize(k);
    for (std::size_t q = 0; q < k; ++q) pick[q] = q;
    while (true) {
      std::fill(keep.begin(), keep.end(), 0);
      for (std::size_t q : pick) keep[q] = 1;
      buf.clear();
      for (std::size_t p = 0; p < host.length(); ++p)
        if (keep[id[p]]) buf.push_back(host[p]);
      fn(buf);
      // Next k-combination of {0..n-1} in lexicographic order.
      std::size_t q = k;
      while (q > 0 && pick[q - 1] == n - k + q - 1) --q;
      if (q == 0) break;
      ++pick[q - 1];
      for (std::size_t r = q; r < k; ++r) pick[r] = pick[r - 1] + 1;
    }
  }
}

std::uint64_t count_occurrences(const OrientedGaussWord& host,
                                const ArrowDiagram& pattern) {
  std::uint64_t count = 0;
  const std::size_t k = pattern.arrows();
  for_each_subword(host, k, k, [&](std::span<const Token> t) {
    if (canonical_key(t) == pattern.key()) ++count;
  });
  return count;
}

std::vector<std::uint64_t> subdiagram_counts(const DiagramTable& table,
                                             const OrientedGaussWord& host) {
  std::vector<std::uint64_t> counts(table.size());
  if (table.size() == 0) return counts;
  const Window w = table.window();
  for_each_subword(host, static_cast<std::size_t>(w.b),
                   static_cast<std::size_t>(w.d), [&](std::span<const Token> t) {
                     if (auto i = table.find(canonical_key(t))) ++counts[*i];
                   });
  return counts;
}

mpz_class evaluate_functional(const Functional& f,
                              std::span<const std::uint64_t> counts) {
  if (counts.size() != f.coeffs().size())
    throw DimensionError("count vector does not match the functional");
  mpz_class total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    mpz_class c;
    mpz_set_ui(c.get_mpz_t(), counts[i]);
    total += f.coeffs()[i] * c;
  }
  return total;
}

mpz_class evaluate_functional(const Functional& f,
                              const OrientedGaussWord& host) {
  return evaluate_functional(f, subdiagram_counts(f.table(), host));
}

mpz_class eval_on_combination(const Functional& f, const LinearCombination& c) {
  mpz_class total = 0;
  for (const auto& [x, coef] : c.terms()) {
    if (auto i = f.table().find(x)) {
      mpz_class m;
      mpz_set_si(m.get_mpz_t(), coef);
      total += f.coeffs()[*i] * m;
    }
  }
  return total;
}

LinearCombination subword_expansion(const OrientedGaussWord& host,
                                    std::size_t lo, std::size_t hi) {
  LinearCombination out;
  for_each_subword(host, lo, hi, [&](std::span<const Token> t) {
    out.add(ArrowDiagram::from_key(canonical_key(t)), 1);
  });
  return out;
}

}  // namespace arrowkernel
