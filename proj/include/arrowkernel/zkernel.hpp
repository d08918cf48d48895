#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arrowkernel/diagrams.hpp"

namespace arrowkernel {

// Exact integer matrix stored sparsely by column.
class IntMatrix {
 public:
  struct Entry {
    std::size_t row;
    mpz_class value;
  };

  IntMatrix() = default;
  explicit IntMatrix(std::size_t rows) : rows_(rows) {}

  static IntMatrix from_rows(const std::vector<std::vector<mpz_class>>& rows);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }

  // Zero values are dropped and repeated rows summed. Throws IndexError on an
  // out-of-range row.
  void append_column(std::vector<Entry> entries);
  std::span<const Entry> column(std::size_t j) const { return cols_[j]; }
  mpz_class at(std::size_t i, std::size_t j) const;
  std::vector<std::vector<mpz_class>> to_dense() const;
  std::size_t nonzeros() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<Entry>> cols_;
};

// Row-style Hermite normal form of the row lattice: pivots strictly move
// right, each pivot is positive, entries above a pivot lie in [0, pivot).
// Zero rows are dropped.
std::vector<std::vector<mpz_class>> hermite_normal_form(
    std::vector<std::vector<mpz_class>> rows, std::size_t cols);

// Saturated integer basis of a left kernel {x : xA = 0}, kept in Hermite
// normal form so equal lattices serialize identically.
class KernelBasis {
 public:
  KernelBasis() = default;

  // Hermite-reduces `vectors`; throws DimensionError on a length mismatch.
  static KernelBasis from_vectors(std::size_t ambient,
                                  std::vector<std::vector<mpz_class>> vectors);

  std::size_t dim() const { return vectors_.size(); }
  std::size_t ambient() const { return ambient_; }
  const std::vector<std::vector<mpz_class>>& vectors() const {
    return vectors_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<std::vector<mpz_class>> vectors_;
};

struct KernelOptions {
  // Receives short progress lines; may be empty.
  std::function<void(const std::string&)> progress;
  // Rough cap in bytes on the multi-modular reconstruction state; left_kernel
  // throws Error instead of exceeding it. 0 means no cap.
  std::size_t memory_limit = std::size_t{3} << 30;
};

KernelBasis left_kernel(const IntMatrix& a, const KernelOptions& options = {});

// Exact rank over the rationals.
std::size_t rank(const IntMatrix& a);

// Appends e_i - e_j for every mirroring pair {i, j} not in `whitelist`
// (0-based, either order). Throws IndexError on an out-of-range pair and
// DimensionError if the report does not describe a.rows() entries.
IntMatrix add_mirror_constraints(
    const IntMatrix& a, const MirrorReport& report,
    const std::set<std::pair<std::size_t, std::size_t>>& whitelist);

// Throws DimensionError if v.size() != k.ambient().
bool contains_vector(const KernelBasis& k, std::span<const mpz_class> v);

// True iff v * a == 0 exactly.
bool annihilates(const IntMatrix& a, std::span<const mpz_class> v);

}  // namespace arrowkernel
