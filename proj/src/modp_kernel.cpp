#include "modp_kernel.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <string>
#include <utility>

namespace arrowkernel::detail {
namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using SparseRow = std::vector<std::pair<u32, u32>>;  // (unknown, value)

// Row echelon basis of dense vectors, built one row at a time. Rows are not
// back-reduced; row with pivot j is zero before j and 1 at j.
class DenseEchelon {
 public:
  DenseEchelon(std::size_t width, const Field& f) : f_(f), at_(width, -1) {}

  // Reduces v; keeps it and returns true if it was independent. Products
  // stay below 2^52, so up to kLazy of them are summed before reducing.
  bool insert(const std::vector<u32>& v) {
    const std::size_t w = at_.size();
    const u64 p = f_.prime();
    acc_.assign(v.begin(), v.end());
    std::size_t pending = 0;
    for (std::size_t j = 0; j < w; ++j) {
      if (acc_[j] == 0) continue;
      const u32 vj = f_.reduce(acc_[j]);
      acc_[j] = 0;
      if (vj == 0) continue;
      if (at_[j] < 0) {
        const u64 inv = f_.inv(vj);
        std::vector<u32> row(w, 0);
        row[j] = 1;
        for (std::size_t t = j + 1; t < w; ++t)
          if (acc_[t]) row[t] = f_.reduce(static_cast<u64>(f_.reduce(acc_[t])) * inv);
        at_[j] = static_cast<long>(rows_.size());
        rows_.push_back(std::move(row));
        pivots_.push_back(j);
        return true;
      }
      const u64 c = p - vj;
      const u32* row = rows_[static_cast<std::size_t>(at_[j])].data();
      u64* a = acc_.data();
      for (std::size_t t = j + 1; t < w; ++t) a[t] += c * row[t];
      if (++pending == kLazy) {
        for (std::size_t t = j + 1; t < w; ++t) a[t] = f_.reduce(a[t]);
        pending = 0;
      }
    }
    return false;
  }

  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return at_.size(); }
  const std::vector<std::vector<u32>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // Basis of {c : row . c = 0 for every stored row}.
  std::vector<std::vector<u32>> nullspace() const {
    const std::size_t w = at_.size();
    // Back-reduce a copy into reduced echelon form.
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return pivots_[x] < pivots_[y]; });
    std::vector<std::vector<u32>> r;
    std::vector<std::size_t> piv;
    for (std::size_t i : order) {
      r.push_back(rows_[i]);
      piv.push_back(pivots_[i]);
    }
    for (std::size_t i = r.size(); i-- > 0;)
      for (std::size_t h = 0; h < i; ++h) {
        const u32 c = r[h][piv[i]];
        if (!c) continue;
        const u64 nc = f_.neg(c);
        for (std::size_t t = piv[i]; t < w; ++t)
          if (r[i][t]) r[h][t] = f_.reduce(r[h][t] + nc * r[i][t]);
      }
    std::vector<std::vector<u32>> out;
    for (std::size_t j = 0; j < w; ++j) {
      if (at_[j] >= 0) continue;
      std::vector<u32> c(w, 0);
      c[j] = 1;
      for (std::size_t h = 0; h < r.size(); ++h) c[piv[h]] = f_.neg(r[h][j]);
      out.push_back(std::move(c));
    }
    return out;
  }

 private:
  const Field& f_;
  std::vector<long> at_;
  std::vector<std::vector<u32>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<u64> acc_;
  static constexpr std::size_t kLazy = 2048;
};

// Density of the active system at which sparse elimination hands over to the
// dense phase.
constexpr double kDenseSwitch = 0.02;
// The dense phase works on random combinations of the remaining equations,
// this many more than the remaining unknowns. Rank they miss is recovered
// by the final check.
constexpr std::size_t kExtraBlocks = 32;

}  // namespace

u32 Field::inv(u32 a) const {
  u64 r = 1, b = a, e = p_ - 2;
  while (e) {
    if (e & 1) r = reduce(r * b);
    b = reduce(b * b);
    e >>= 1;
  }
  return static_cast<u32>(r);
}

u32 Field::from(const mpz_class& v) const {
  return static_cast<u32>(mpz_fdiv_ui(v.get_mpz_t(), p_));
}

ModKernel modular_left_kernel(const IntMatrix& a, const Field& f,
                              const KernelOptions& options) {
  const std::size_t m = a.rows();
  const std::size_t neq = a.cols();
  auto say = [&](const std::string& s) {
    if (options.progress) options.progress(s);
  };

  // Equation j is column j of A: sum_i A[i][j] x_i = 0.
  std::vector<SparseRow> rows(neq);
  std::vector<std::vector<u32>> col_rows(m);
  std::vector<u32> count(m, 0);
  std::vector<char> active(neq, 0), eliminated(m, 0);
  std::size_t live_rows = 0, live_cols = 0, live_nnz = 0;
  auto inc = [&](u32 c) {
    if (count[c]++ == 0) ++live_cols;
  };
  auto dec = [&](u32 c) {
    if (--count[c] == 0) --live_cols;
  };
  for (std::size_t j = 0; j < neq; ++j) {
    for (const auto& e : a.column(j)) {
      const u32 v = f.from(e.value);
      if (v == 0) continue;
      rows[j].emplace_back(static_cast<u32>(e.row), v);
      col_rows[e.row].push_back(static_cast<u32>(j));
      inc(static_cast<u32>(e.row));
    }
    if (!rows[j].empty()) {
      active[j] = 1;
      ++live_rows;
      live_nnz += rows[j].size();
    }
  }

  using Key = std::pair<u32, u32>;  // (count, unknown)
  std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
  for (u32 c = 0; c < m; ++c)
    if (count[c]) heap.emplace(count[c], c);

  auto value_at = [](const SparseRow& r, u32 c) -> u32 {
    auto it = std::lower_bound(r.begin(), r.end(), std::make_pair(c, 0u));
    return it != r.end() && it->first == c ? it->second : 0;
  };

  std::vector<SparseRow> pivot_rows;
  std::vector<u32> pivot_col;
  SparseRow merged;

  // Sparse phase: pivot on the unknown in the fewest active equations, using
  // its shortest equation.
  while (true) {
    if (pivot_rows.size() % 64 == 0 && live_cols > 0 &&
        static_cast<double>(live_nnz) >
            kDenseSwitch * static_cast<double>(live_rows) * static_cast<double>(live_cols))
      break;
    u32 c = 0, e = 0;
    bool found = false;
    while (!heap.empty()) {
      auto [cnt, col] = heap.top();
      heap.pop();
      if (eliminated[col] || cnt != count[col] || cnt == 0) continue;
      c = col;
      found = true;
      break;
    }
    if (!found) break;
    std::size_t best = SIZE_MAX;
    for (u32 r : col_rows[c]) {
      if (!active[r] || rows[r].size() >= best || value_at(rows[r], c) == 0) continue;
      best = rows[r].size();
      e = r;
    }

    SparseRow piv = std::move(rows[e]);
    rows[e].clear();
    active[e] = 0;
    --live_rows;
    live_nnz -= piv.size();
    const u64 inv = f.inv(value_at(piv, c));
    for (auto& [col, v] : piv) {
      v = f.reduce(v * inv);
      dec(col);
      if (col != c) heap.emplace(count[col], col);
    }
    eliminated[c] = 1;

    for (u32 r : col_rows[c]) {
      if (!active[r]) continue;
      const u32 fr = value_at(rows[r], c);
      if (fr == 0) continue;
      const u64 neg = f.neg(fr);
      const SparseRow& old = rows[r];
      merged.clear();
      std::size_t x = 0, y = 0;
      while (x < old.size() || y < piv.size()) {
        if (y == piv.size() || (x < old.size() && old[x].first < piv[y].first)) {
          merged.push_back(old[x++]);
        } else if (x == old.size() || piv[y].first < old[x].first) {
          const u32 col = piv[y].first;
          merged.emplace_back(col, f.reduce(neg * piv[y].second));
          inc(col);
          col_rows[col].push_back(r);
          heap.emplace(count[col], col);
          ++y;
        } else {
          const u32 col = old[x].first;
          const u32 v = f.reduce(old[x].second + neg * piv[y].second);
          if (v) {
            merged.emplace_back(col, v);
          } else {
            dec(col);
            heap.emplace(count[col], col);
          }
          ++x;
          ++y;
        }
      }
      live_nnz += merged.size();
      live_nnz -= old.size();
      rows[r].swap(merged);
      if (rows[r].empty()) {
        active[r] = 0;
        --live_rows;
      }
    }
    col_rows[c].clear();
    col_rows[c].shrink_to_fit();
    pivot_rows.push_back(std::move(piv));
    pivot_col.push_back(c);
    if (pivot_rows.size() % 5000 == 0)
      say("  sparse pivots " + std::to_string(pivot_rows.size()) + ", active " +
          std::to_string(live_rows) + " x " + std::to_string(live_cols));
  }

  // Dense phase over the unknowns still present in active equations.
  if (live_cols > 0) {
    std::vector<u32> cols;
    std::vector<long> dpos(m, -1);
    for (u32 c = 0; c < m; ++c)
      if (!eliminated[c] && count[c]) {
        dpos[c] = static_cast<long>(cols.size());
        cols.push_back(c);
      }
    std::vector<u32> live;
    for (u32 r = 0; r < neq; ++r)
      if (active[r]) live.push_back(r);
    const std::size_t blocks = std::min(live.size(), cols.size() + kExtraBlocks);
    std::vector<std::vector<std::pair<u32, u32>>> members(blocks);  // (equation, coefficient)
    std::mt19937_64 rng(f.prime());
    for (std::size_t t = 0; t < live.size(); ++t) {
      if (blocks == live.size()) {
        members[t].emplace_back(live[t], 1);
        continue;
      }
      const std::size_t blk = rng() % blocks;
      members[blk].emplace_back(live[t], static_cast<u32>(1 + rng() % (f.prime() - 1)));
    }
    say("  dense phase " + std::to_string(live.size()) + " equations in " +
        std::to_string(blocks) + " combinations x " + std::to_string(cols.size()));
    DenseEchelon de(cols.size(), f);
    std::vector<u32> v(cols.size());
    for (const auto& blk : members) {
      std::fill(v.begin(), v.end(), 0);
      for (auto [r, coef] : blk)
        for (auto [col, val] : rows[r]) {
          u32& slot = v[static_cast<std::size_t>(dpos[col])];
          slot = f.add(slot, f.mul(coef, val));
        }
      de.insert(v);
      if (de.rank() == cols.size()) break;
    }
    std::vector<std::size_t> order(de.rank());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return de.pivots()[x] < de.pivots()[y];
    });
    for (std::size_t i : order) {
      const std::vector<u32>& dr = de.rows()[i];
      SparseRow sr;
      for (std::size_t t = de.pivots()[i]; t < dr.size(); ++t)
        if (dr[t]) sr.emplace_back(cols[t], dr[t]);
      const u32 c = cols[de.pivots()[i]];
      eliminated[c] = 1;
      pivot_rows.push_back(std::move(sr));
      pivot_col.push_back(c);
    }
  }
  rows.clear();
  rows.shrink_to_fit();
  col_rows.clear();
  col_rows.shrink_to_fit();

  // Back substitution: one kernel vector per unknown left without a pivot.
  std::vector<u32> free;
  for (u32 c = 0; c < m; ++c)
    if (!eliminated[c]) free.push_back(c);
  std::size_t k = free.size();
  std::vector<u32> x(m * k, 0);
  for (std::size_t g = 0; g < k; ++g) x[static_cast<std::size_t>(free[g]) * k + g] = 1;
  std::vector<u64> sum(k);
  for (std::size_t t = pivot_rows.size(); t-- > 0;) {
    const u32 c = pivot_col[t];
    std::fill(sum.begin(), sum.end(), 0);
    for (auto [col, v] : pivot_rows[t]) {
      if (col == c) continue;
      const u32* xr = &x[static_cast<std::size_t>(col) * k];
      for (std::size_t g = 0; g < k; ++g)
        if (xr[g]) sum[g] = f.reduce(sum[g] + static_cast<u64>(v) * xr[g]);
    }
    u32* xc = &x[static_cast<std::size_t>(c) * k];
    for (std::size_t g = 0; g < k; ++g) xc[g] = f.neg(static_cast<u32>(sum[g]));
  }
  pivot_rows.clear();

  // Every equation is checked against the candidate kernel; equations the
  // dense phase skipped may cut it down further.
  DenseEchelon cons(k, f);
  std::vector<u32> z(k);
  for (std::size_t j = 0; j < neq && k > 0; ++j) {
    std::fill(sum.begin(), sum.end(), 0);
    for (const auto& e : a.column(j)) {
      const u64 v = f.from(e.value);
      if (!v) continue;
      const u32* xr = &x[e.row * k];
      for (std::size_t g = 0; g < k; ++g)
        if (xr[g]) sum[g] = f.reduce(sum[g] + v * xr[g]);
    }
    bool nonzero = false;
    for (std::size_t g = 0; g < k; ++g) {
      z[g] = static_cast<u32>(sum[g]);
      nonzero = nonzero || z[g];
    }
    if (nonzero && cons.insert(z) && cons.rank() == k) break;
  }

  ModKernel out;
  if (cons.rank() == 0) {
    out.free.assign(free.begin(), free.end());
    out.basis.assign(k, std::vector<u32>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t g = 0; g < k; ++g) out.basis[g][i] = x[i * k + g];
    return out;
  }
  say("  final check removed " + std::to_string(cons.rank()) + " kernel directions");
  // Each nullspace vector is a unit at a non-pivot g plus entries at the
  // constraint pivots, so the new basis keeps the identity on those g.
  std::vector<char> cut(k, 0);
  for (std::size_t t : cons.pivots()) cut[t] = 1;
  for (const std::vector<u32>& c : cons.nullspace()) {
    std::size_t g = 0;
    while (cut[g] || c[g] != 1) ++g;
    std::vector<u32> row(m);
    for (std::size_t i = 0; i < m; ++i) {
      u64 s = x[i * k + g];
      for (std::size_t t : cons.pivots())
        if (c[t]) s = f.reduce(s + static_cast<u64>(c[t]) * x[i * k + t]);
      row[i] = static_cast<u32>(s);
    }
    out.free.push_back(free[g]);
    out.basis.push_back(std::move(row));
  }
  return out;
}

}  // namespace arrowkernel::detail
