// left_kernel: elimination modulo word-size primes, lifted by CRT and
// rational reconstruction, certified by an exact product check, then
// saturated and Hermite-reduced.

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "arrowkernel/error.hpp"
#include "arrowkernel/zkernel.hpp"
#include "modp_kernel.hpp"

namespace arrowkernel {
namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Primes below 2^26, largest first. Products of two residues fit in 52 bits,
// so the dense phase can defer reductions.
const std::vector<u32>& moduli() {
  static const std::vector<u32> primes = [] {
    std::vector<u32> out;
    for (u32 n = (1u << 26) - 1; out.size() < 120; n -= 2) {
      bool prime = true;
      for (u32 q = 3; q * q <= n && prime; q += 2) prime = n % q != 0;
      if (prime) out.push_back(n);
    }
    return out;
  }();
  return primes;
}

// Wang reconstruction of r mod mod as num/den with |num|, den <= bound.
bool reconstruct(const mpz_class& r, const mpz_class& mod, const mpz_class& bound,
                 mpz_class& num, mpz_class& den) {
  mpz_class r0 = mod, r1 = r, t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (sgn(t1) == 0 || abs(t1) > bound) return false;
  mpz_class g = gcd(r1, t1);
  if (g != 1) return false;
  if (sgn(t1) < 0) {
    num = -r1;
    den = -t1;
  } else {
    num = r1;
    den = t1;
  }
  return true;
}

// Integer vectors w_g = den_g * (rational kernel vector g), if every residue
// reconstructs.
bool lift(const std::vector<std::vector<mpz_class>>& residues, const mpz_class& mod,
          std::vector<std::vector<mpz_class>>& out, std::vector<mpz_class>& dens) {
  mpz_class bound;
  mpz_class half = mod / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  out.assign(residues.size(), {});
  dens.assign(residues.size(), 1);
  mpz_class scaled, num, den;
  for (std::size_t g = 0; g < residues.size(); ++g) {
    std::vector<mpz_class>& w = out[g];
    w.resize(residues[g].size());
    mpz_class& d = dens[g];
    for (std::size_t i = 0; i < residues[g].size(); ++i) {
      scaled = residues[g][i] * d % mod;
      if (scaled <= bound) {
        w[i] = scaled;
        continue;
      }
      if (mod - scaled <= bound) {
        w[i] = scaled - mod;
        continue;
      }
      if (!reconstruct(scaled, mod, bound, num, den)) return false;
      for (std::size_t t = 0; t < i; ++t) w[t] *= den;
      d *= den;
      w[i] = num;
      if (d > bound) return false;
    }
  }
  return true;
}

// Saturated basis of span(w) ∩ Z^m given w_g = den_g * x_g, where the x_g
// have the identity on the free coordinates.
std::vector<std::vector<mpz_class>> saturate(
    const std::vector<std::vector<mpz_class>>& w, const std::vector<mpz_class>& dens,
    std::size_t m) {
  const std::size_t k = w.size();
  mpz_class big_d = 1;
  for (const auto& d : dens) big_d = lcm(big_d, d);
  if (big_d == 1) return w;

  // X = D * x; the lattice is {c X / D : c X = 0 mod D}.
  std::vector<std::vector<mpz_class>> x(k);
  for (std::size_t g = 0; g < k; ++g) {
    mpz_class s = big_d / dens[g];
    x[g].resize(m);
    for (std::size_t i = 0; i < m; ++i) x[g][i] = w[g][i] * s;
  }
  std::vector<std::vector<mpz_class>> lam(k, std::vector<mpz_class>(k));
  for (std::size_t g = 0; g < k; ++g) lam[g][g] = 1;
  std::vector<mpz_class> t(k);
  mpz_class q, r;
  for (std::size_t i = 0; i < m; ++i) {
    bool any = false;
    for (std::size_t g = 0; g < k; ++g) {
      t[g] = 0;
      for (std::size_t h = 0; h < k; ++h)
        if (sgn(lam[g][h])) mpz_addmul(t[g].get_mpz_t(), lam[g][h].get_mpz_t(), x[h][i].get_mpz_t());
      mpz_fdiv_r(t[g].get_mpz_t(), t[g].get_mpz_t(), big_d.get_mpz_t());
      any = any || sgn(t[g]) != 0;
    }
    if (!any) continue;
    // Euclid across rows so that one row carries gcd(t) and the rest 0.
    while (true) {
      std::size_t best = k;
      for (std::size_t g = 0; g < k; ++g)
        if (sgn(t[g]) && (best == k || mpz_cmpabs(t[g].get_mpz_t(), t[best].get_mpz_t()) < 0)) best = g;
      bool done = true;
      for (std::size_t g = 0; g < k; ++g) {
        if (g == best || sgn(t[g]) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), t[g].get_mpz_t(), t[best].get_mpz_t());
        t[g] -= q * t[best];
        for (std::size_t h = 0; h < k; ++h) lam[g][h] -= q * lam[best][h];
        if (sgn(t[g])) done = false;
      }
      if (done) {
        mpz_class gg = gcd(t[best], big_d);
        mpz_class factor = big_d / gg;
        for (std::size_t h = 0; h < k; ++h) lam[best][h] *= factor;
        break;
      }
    }
    // Keep coefficients small: the lattice contains D * Z^k.
    std::vector<std::vector<mpz_class>> stacked = lam;
    for (std::size_t g = 0; g < k; ++g) {
      stacked.emplace_back(k);
      stacked.back()[g] = big_d;
    }
    lam = hermite_normal_form(std::move(stacked), k);
  }
  std::vector<std::vector<mpz_class>> out;
  for (const auto& c : lam) {
    std::vector<mpz_class> v(m);
    for (std::size_t h = 0; h < k; ++h)
      if (sgn(c[h]))
        for (std::size_t i = 0; i < m; ++i)
          if (sgn(x[h][i])) mpz_addmul(v[i].get_mpz_t(), c[h].get_mpz_t(), x[h][i].get_mpz_t());
    for (auto& e : v) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), big_d.get_mpz_t());
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

KernelBasis left_kernel(const IntMatrix& a, const KernelOptions& options) {
  const std::size_t m = a.rows();
  if (m == 0) return KernelBasis::from_vectors(0, {});

  // A prime with a larger kernel than another is unlucky. Primes with the
  // same dimension but a different free set describe the same space in
  // another coordinate system; they are skipped, and a run of them replaces
  // the current one.
  std::vector<std::size_t> free;
  std::vector<std::vector<mpz_class>> residues;
  mpz_class mod = 0;
  int mismatches = 0;
  for (u32 p : moduli()) {
    const detail::Field f(p);
    detail::ModKernel k = detail::modular_left_kernel(a, f, options);
    if (options.progress)
      options.progress("  prime " + std::to_string(p) + ": kernel dimension " +
                       std::to_string(k.free.size()));
    if (mod != 0 && k.free.size() > free.size()) continue;
    bool fresh = mod == 0 || k.free.size() < free.size();
    if (!fresh && k.free != free) {
      if (++mismatches < 3) continue;
      fresh = true;
    }
    mismatches = 0;
    if (options.memory_limit) {
      // Residues plus the lifted copy, each entry an mpz of the next modulus.
      const double bits = fresh ? 26.0 : static_cast<double>(mpz_sizeinbase(mod.get_mpz_t(), 2)) + 26.0;
      const double need = 2.0 * static_cast<double>(k.free.size()) * static_cast<double>(m) *
                          (32.0 + 8.0 * std::ceil(bits / 64.0));
      if (need > static_cast<double>(options.memory_limit))
        throw Error("exact reconstruction of a " + std::to_string(k.free.size()) +
                    "-dimensional kernel in " + std::to_string(m) +
                    " coordinates exceeds the memory limit");
    }
    if (fresh) {
      free = k.free;
      residues.assign(free.size(), std::vector<mpz_class>(m));
      for (std::size_t g = 0; g < free.size(); ++g)
        for (std::size_t i = 0; i < m; ++i) residues[g][i] = k.basis[g][i];
      mod = p;
    } else {
      // CRT: r' = r + mod * ((v - r) * mod^{-1} mod p).
      const u64 inv = f.inv(f.from(mod));
      for (std::size_t g = 0; g < free.size(); ++g)
        for (std::size_t i = 0; i < m; ++i) {
          mpz_class& r = residues[g][i];
          const u64 diff = f.add(k.basis[g][i], f.neg(f.from(r)));
          const u64 h = f.reduce(diff * inv);
          if (h) mpz_addmul_ui(r.get_mpz_t(), mod.get_mpz_t(), h);
        }
      mod *= p;
    }

    std::vector<std::vector<mpz_class>> w;
    std::vector<mpz_class> dens;
    if (!lift(residues, mod, w, dens)) continue;
    bool ok = std::all_of(w.begin(), w.end(),
                          [&](const std::vector<mpz_class>& v) { return annihilates(a, v); });
    if (!ok) continue;
    // dim independent exact kernel vectors bound the rational rank by
    // m - dim, and the modular rank bounds it from below.
    return KernelBasis::from_vectors(m, saturate(w, dens, m));
  }
  throw Error("kernel computation did not stabilize over the available primes");
}

std::size_t rank(const IntMatrix& a) { return a.rows() - left_kernel(a).dim(); }

}  // namespace arrowkernel
