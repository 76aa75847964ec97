#pragma once

// Exact sparse linear algebra over the rationals. Rows are cleared of
// denominators on entry and eliminated fraction-free over the integers, with
// the content of every updated row divided out.

#include <hol/core/rational.hpp>

#include <map>
#include <stdexcept>
#include <vector>

namespace hol {

class EchelonBasis {
 public:
  explicit EchelonBasis(int ncols) : ncols_(ncols), pivot_row_(ncols, -1) {}

  int ncols() const { return ncols_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  /// Reduces `v` against the current basis; if a nonzero remainder survives
  /// it is appended. Returns true iff the rank grew.
  bool insert(const SVecQ& v) { return insert(primitive_integer(v)); }

  bool insert(SVecZ row) {
    reduce_leading(row);
    if (row.empty()) return false;
    int lead = row.front().first;
    pivot_row_[lead] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(row));
    reduced_ = false;
    return true;
  }

  /// True iff `v` lies in the span.
  bool contains(const SVecQ& v) const {
    SVecZ row = primitive_integer(v);
    reduce_leading(row);
    return row.empty();
  }

  /// Fully back-substituted rows: every pivot column is zero in all other
  /// rows. Returned in increasing pivot order.
  const std::vector<SVecZ>& reduced_rows() {
    if (!reduced_) back_substitute();
    return rows_;
  }

  std::vector<int> pivot_columns() const {
    std::vector<int> cols;
    for (const auto& r : rows_) cols.push_back(r.front().first);
    std::sort(cols.begin(), cols.end());
    return cols;
  }

  /// Basis of {x : r . x = 0 for every stored row r}.
  std::vector<SVecQ> kernel() {
    const auto& rows = reduced_rows();
    std::vector<char> is_pivot(ncols_, 0);
    for (const auto& r : rows) is_pivot[r.front().first] = 1;
    // Column-indexed view of the non-pivot entries of each row.
    std::vector<std::vector<std::pair<int, Q>>> by_free(ncols_);
    for (const auto& r : rows) {
      int p = r.front().first;
      const Z& lead = r.front().second;
      for (std::size_t k = 1; k < r.size(); ++k) {
        by_free[r[k].first].emplace_back(p, Q(-r[k].second, lead));
      }
    }
    std::vector<SVecQ> out;
    for (int f = 0; f < ncols_; ++f) {
      if (is_pivot[f]) continue;
      SVecQ v;
      v.emplace_back(f, Q(1));
      for (auto& [p, q] : by_free[f]) {
        q.canonicalize();
        v.emplace_back(p, q);
      }
      sort_and_compress(v);
      out.push_back(to_q(primitive_integer(v)));
    }
    return out;
  }

 private:
  static void normalize(SVecZ& row) {
    if (row.empty()) return;
    Z g = 0;
    for (const auto& e : row) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
      if (g == 1) return;
    }
    if (row.front().second < 0) g = -g;
    for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
  }

  // row := a*row - b*other with a = lead(other), b = row[col].
  static SVecZ combine(const SVecZ& row, const Z& a, const SVecZ& other, const Z& b) {
    SVecZ out;
    out.reserve(row.size() + other.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < other.size()) {
      if (j == other.size() || (i < row.size() && row[i].first < other[j].first)) {
        out.emplace_back(row[i].first, a * row[i].second);
        ++i;
      } else if (i == row.size() || other[j].first < row[i].first) {
        out.emplace_back(other[j].first, -b * other[j].second);
        ++j;
      } else {
        Z v = a * row[i].second - b * other[j].second;
        if (v != 0) out.emplace_back(row[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  void reduce_leading(SVecZ& row) const {
    normalize(row);
    while (!row.empty()) {
      int lead = row.front().first;
      int pr = pivot_row_[lead];
      if (pr < 0) return;
      const SVecZ& piv = rows_[pr];
      Z a = piv.front().second;
      Z b = row.front().second;
      Z g = gcd(a, b);
      a /= g;
      b /= g;
      row = combine(row, a, piv, b);
      normalize(row);
    }
  }

  void back_substitute() {
    // Process pivots from the rightmost column leftwards so that each row is
    // cleaned only by rows that are already fully reduced.
    std::vector<int> order(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return rows_[x].front().first > rows_[y].front().first;
    });
    for (int ri : order) {
      SVecZ& row = rows_[ri];
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t k = 1; k < row.size(); ++k) {
          int col = row[k].first;
          int pr = pivot_row_[col];
          if (pr < 0 || pr == ri) continue;
          const SVecZ& piv = rows_[pr];
          Z a = piv.front().second;
          Z b = row[k].second;
          Z g = gcd(a, b);
          a /= g;
          b /= g;
          row = combine(row, a, piv, b);
          normalize(row);
          changed = true;
          break;
        }
      }
    }
    std::sort(rows_.begin(), rows_.end(),
              [](const SVecZ& x, const SVecZ& y) { return x.front().first < y.front().first; });
    for (std::size_t i = 0; i < rows_.size(); ++i) pivot_row_[rows_[i].front().first] = static_cast<int>(i);
    reduced_ = true;
  }

  int ncols_;
  std::vector<int> pivot_row_;
  std::vector<SVecZ> rows_;
  bool reduced_ = true;
};

inline int rank_of(const std::vector<SVecQ>& rows, int ncols) {
  EchelonBasis eb(ncols);
  for (const auto& r : rows) eb.insert(r);
  return eb.rank();
}

/// Basis of the right kernel of the matrix whose rows are `rows`.
inline std::vector<SVecQ> nullspace(const std::vector<SVecQ>& rows, int ncols) {
  EchelonBasis eb(ncols);
  for (const auto& r : rows) eb.insert(r);
  return eb.kernel();
}

/// Dense exact inverse by Gauss-Jordan over Q. Throws if singular.
inline std::vector<std::vector<Q>> inverse(std::vector<std::vector<Q>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Q>> inv(n, std::vector<Q>(n, Q(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) throw std::runtime_error("inverse: singular matrix");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Q s = 1 / m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      if (m[c][j] != 0) m[c][j] *= s;
      if (inv[c][j] != 0) inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Q f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        if (m[c][j] != 0) m[r][j] -= f * m[c][j];
        if (inv[c][j] != 0) inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

/// Exact rank of a dense rational matrix (fraction-free Bareiss on the
/// denominator-cleared integer matrix).
inline int dense_rank(const std::vector<std::vector<Q>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t ncol = rows.front().size();
  std::vector<std::vector<Z>> m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    Z den = 1;
    for (const auto& q : r) den = lcm(den, q.get_den());
    std::vector<Z> zr(ncol);
    for (std::size_t j = 0; j < ncol; ++j) zr[j] = r[j].get_num() * (den / r[j].get_den());
    m.push_back(std::move(zr));
  }
  const std::size_t nrow = m.size();
  std::size_t rank = 0;
  Z prev = 1;
  for (std::size_t c = 0; c < ncol && rank < nrow; ++c) {
    std::size_t p = rank;
    while (p < nrow && m[p][c] == 0) ++p;
    if (p == nrow) continue;
    std::swap(m[p], m[rank]);
    const Z& piv = m[rank][c];
    for (std::size_t r = rank + 1; r < nrow; ++r) {
      for (std::size_t j = c + 1; j < ncol; ++j) {
        Z v = piv * m[r][j] - m[r][c] * m[rank][j];
        mpz_divexact(m[r][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m[r][c] = 0;
    }
    prev = piv;
    ++rank;
  }
  return static_cast<int>(rank);
}

}  // namespace hol
