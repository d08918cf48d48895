#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "arrowkernel/diagrams.hpp"
#include "arrowkernel/words.hpp"

namespace arrowkernel {

// Sparse integer combination of diagrams; zero coefficients are never stored.
class LinearCombination {
 public:
  using Terms = std::map<ArrowDiagram, std::int64_t>;

  LinearCombination() = default;

  void add(const ArrowDiagram& x, std::int64_t coef);
  void add(const LinearCombination& other, std::int64_t scale = 1);

  const Terms& terms() const { return terms_; }
  std::int64_t coefficient(const ArrowDiagram& x) const;
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  LinearCombination operator-() const;
  friend LinearCombination operator+(LinearCombination a,
                                     const LinearCombination& b) {
    a.add(b);
    return a;
  }
  friend LinearCombination operator-(LinearCombination a,
                                     const LinearCombination& b) {
    a.add(b, -1);
    return a;
  }
  friend bool operator==(const LinearCombination&,
                         const LinearCombination&) = default;
  friend auto operator<=>(const LinearCombination& a,
                          const LinearCombination& b) {
    return a.terms_ <=> b.terms_;
  }

 private:
  Terms terms_;
};

// Sum of alpha_i times the counting functional of table entry i. The table
// must outlive the functional.
class Functional {
 public:
  // Throws DimensionError if coeffs.size() != table.size().
  Functional(const DiagramTable& table, std::vector<mpz_class> coeffs);

  const DiagramTable& table() const { return *table_; }
  std::span<const mpz_class> coeffs() const { return coeffs_; }

 private:
  const DiagramTable* table_;
  std::vector<mpz_class> coeffs_;
};

// Calls fn with the token sequence of every sub-word of `host` on a letter
// subset whose size lies in [lo, hi]. The tokens are not normalized.
void for_each_subword(const OrientedGaussWord& host, std::size_t lo,
                      std::size_t hi,
                      const std::function<void(std::span<const Token>)>& fn);

std::uint64_t count_occurrences(const OrientedGaussWord& host,
                                const ArrowDiagram& pattern);

// Occurrence count of every table entry in `host`, in table order.
std::vector<std::uint64_t> subdiagram_counts(const DiagramTable& table,
                                             const OrientedGaussWord& host);

mpz_class evaluate_functional(const Functional& f,
                              const OrientedGaussWord& host);
mpz_class evaluate_functional(const Functional& f,
                              std::span<const std::uint64_t> counts);

// Diagrams missing from the table contribute nothing.
mpz_class eval_on_combination(const Functional& f, const LinearCombination& c);

// Sum over letter subsets A with |A| in [lo, hi] of the class of sub_A(host).
LinearCombination subword_expansion(const OrientedGaussWord& host,
                                    std::size_t lo, std::size_t hi);

}  // namespace arrowkernel
