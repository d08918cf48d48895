#include "arrowkernel/zkernel.hpp"

#include <algorithm>

#include "arrowkernel/error.hpp"

namespace arrowkernel {

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<mpz_class>>& rows) {
  IntMatrix a(rows.size());
  const std::size_t n = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows)
    if (r.size() != n) throw DimensionError("ragged matrix rows");
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Entry> col;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (sgn(rows[i][j]) != 0) col.push_back({i, rows[i][j]});
    a.append_column(std::move(col));
  }
  return a;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<mpz_class>> big;
  big.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<mpz_class> row;
    for (long v : r) row.emplace_back(v);
    big.push_back(std::move(row));
  }
  return from_rows(big);
}

void IntMatrix::append_column(std::vector<Entry> entries) {
  for (const Entry& e : entries)
    if (e.row >= rows_)
      throw IndexError("matrix entry row " + std::to_string(e.row) +
                       " out of range (rows = " + std::to_string(rows_) + ")");
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) { return x.row < y.row; });
  std::vector<Entry> merged;
  for (Entry& e : entries) {
    if (!merged.empty() && merged.back().row == e.row) merged.back().value += e.value;
    else merged.push_back(std::move(e));
  }
  std::erase_if(merged, [](const Entry& e) { return sgn(e.value) == 0; });
  cols_.push_back(std::move(merged));
}

mpz_class IntMatrix::at(std::size_t i, std::size_t j) const {
  for (const Entry& e : cols_.at(j))
    if (e.row == i) return e.value;
  return 0;
}

std::vector<std::vector<mpz_class>> IntMatrix::to_dense() const {
  std::vector<std::vector<mpz_class>> d(rows_, std::vector<mpz_class>(cols()));
  for (std::size_t j = 0; j < cols(); ++j)
    for (const Entry& e : cols_[j]) d[e.row][j] = e.value;
  return d;
}

std::size_t IntMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols() != b.cols()) return false;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const auto& x = a.cols_[j];
    const auto& y = b.cols_[j];
    if (x.size() != y.size()) return false;
    for (std::size_t t = 0; t < x.size(); ++t)
      if (x[t].row != y[t].row || x[t].value != y[t].value) return false;
  }
  return true;
}

namespace {

// row -= q * pivot, restricted to columns >= from.
void sub_mul(std::vector<mpz_class>& row, const std::vector<mpz_class>& pivot,
             const mpz_class& q, std::size_t from) {
  for (std::size_t c = from; c < row.size(); ++c)
    if (sgn(pivot[c]) != 0) mpz_submul(row[c].get_mpz_t(), q.get_mpz_t(), pivot[c].get_mpz_t());
}

}  // namespace

std::vector<std::vector<mpz_class>> hermite_normal_form(
    std::vector<std::vector<mpz_class>> rows, std::size_t cols) {
  for (const auto& r : rows)
    if (r.size() != cols) throw DimensionError("ragged rows in Hermite reduction");
  std::size_t r = 0;
  mpz_class q;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (sgn(rows[i][c]) != 0 &&
            (best == rows.size() || mpz_cmpabs(rows[i][c].get_mpz_t(), rows[best][c].get_mpz_t()) < 0))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (sgn(rows[i][c]) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        sub_mul(rows[i], rows[r], q, c);
        if (sgn(rows[i][c]) != 0) done = false;
      }
      if (done) break;
    }
    if (r >= rows.size() || sgn(rows[r][c]) == 0) continue;
    if (sgn(rows[r][c]) < 0)
      for (std::size_t t = c; t < cols; ++t) rows[r][t] = -rows[r][t];
    for (std::size_t i = 0; i < r; ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      sub_mul(rows[i], rows[r], q, c);
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

KernelBasis KernelBasis::from_vectors(std::size_t ambient,
                                      std::vector<std::vector<mpz_class>> vectors) {
  for (const auto& v : vectors)
    if (v.size() != ambient)
      throw DimensionError("basis vector of length " + std::to_string(v.size()) +
                           ", expected " + std::to_string(ambient));
  KernelBasis k;
  k.ambient_ = ambient;
  k.vectors_ = hermite_normal_form(std::move(vectors), ambient);
  return k;
}

IntMatrix add_mirror_constraints(
    const IntMatrix& a, const MirrorReport& report,
    const std::set<std::pair<std::size_t, std::size_t>>& whitelist) {
  if (report.partner.size() != a.rows())
    throw DimensionError("mirror report covers " +
                         std::to_string(report.partner.size()) +
                         " entries but the matrix has " +
                         std::to_string(a.rows()) + " rows");
  std::set<std::pair<std::size_t, std::size_t>> allowed;
  for (auto [i, j] : whitelist) {
    if (i >= a.rows() || j >= a.rows())
      throw IndexError("whitelist pair (" + std::to_string(i + 1) + ", " +
                       std::to_string(j + 1) + ") out of range");
    allowed.emplace(std::min(i, j), std::max(i, j));
  }
  IntMatrix out = a;
  for (auto [i, j] : report.pairs) {
    if (i >= a.rows() || j >= a.rows())
      throw IndexError("mirror pair out of range");
    if (allowed.count({std::min(i, j), std::max(i, j)})) continue;
    out.append_column({{i, 1}, {j, -1}});
  }
  return out;
}

bool contains_vector(const KernelBasis& k, std::span<const mpz_class> v) {
  if (v.size() != k.ambient())
    throw DimensionError("vector of length " + std::to_string(v.size()) +
                         ", expected " + std::to_string(k.ambient()));
  std::vector<mpz_class> rest(v.begin(), v.end());
  mpz_class q;
  for (const auto& row : k.vectors()) {
    std::size_t c = 0;
    while (sgn(row[c]) == 0) ++c;
    for (std::size_t t = 0; t < c; ++t)
      if (sgn(rest[t]) != 0) return false;
    if (!mpz_divisible_p(rest[c].get_mpz_t(), row[c].get_mpz_t())) return false;
    mpz_divexact(q.get_mpz_t(), rest[c].get_mpz_t(), row[c].get_mpz_t());
    sub_mul(rest, row, q, c);
  }
  return std::all_of(rest.begin(), rest.end(),
                     [](const mpz_class& x) { return sgn(x) == 0; });
}

bool annihilates(const IntMatrix& a, std::span<const mpz_class> v) {
  if (v.size() != a.rows())
    throw DimensionError("vector length does not match the matrix rows");
  mpz_class acc;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    acc = 0;
    for (const auto& e : a.column(j))
      mpz_addmul(acc.get_mpz_t(), e.value.get_mpz_t(), v[e.row].get_mpz_t());
    if (sgn(acc) != 0) return false;
  }
  return true;
}

}  // namespace arrowkernel
