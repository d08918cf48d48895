#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "arrowkernel/zkernel.hpp"

namespace arrowkernel::detail {

// Arithmetic modulo a prime below 2^26 with Barrett reduction.
class Field {
 public:
  explicit Field(std::uint32_t p) : p_(p), m_(~std::uint64_t{0} / p) {}

  std::uint32_t prime() const { return p_; }
  std::uint32_t reduce(std::uint64_t x) const {
    auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * m_) >> 64);
    std::uint64_t r = x - q * p_;
    while (r >= p_) r -= p_;
    return static_cast<std::uint32_t>(r);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return reduce(static_cast<std::uint64_t>(a) * b);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t neg(std::uint32_t a) const { return a ? p_ - a : 0; }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t from(const mpz_class& v) const;

 private:
  std::uint32_t p_;
  std::uint64_t m_;
};

// Left kernel of A modulo p as the unique basis with the identity on the
// coordinates `free` (ascending): basis[g][free[h]] = (g == h).
struct ModKernel {
  std::vector<std::size_t> free;
  std::vector<std::vector<std::uint32_t>> basis;
};

ModKernel modular_left_kernel(const IntMatrix& a, const Field& f,
                              const KernelOptions& options);

}  // namespace arrowkernel::detail
