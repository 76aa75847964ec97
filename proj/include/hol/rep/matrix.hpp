#pragma once

#include <hol/core/rational.hpp>

#include <stdexcept>
#include <vector>

namespace hol::rep {

/// Column-major sparse matrix over Q.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), columns_(cols) {}

  static SparseMatrix identity(int n) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.columns_[i].emplace_back(i, Q(1));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const SVecQ& column(int j) const { return columns_[j]; }
  SVecQ& column(int j) { return columns_[j]; }

  Q at(int i, int j) const {
    for (const auto& [r, v] : columns_[j])
      if (r == i) return v;
    return 0;
  }

  /// Adds v at (i, j); call `compress()` afterwards if entries may collide.
  void add(int i, int j, const Q& v) {
    if (v != 0) columns_[j].emplace_back(i, v);
  }

  void compress() {
    for (auto& c : columns_) sort_and_compress(c);
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  bool is_zero() const {
    for (const auto& c : columns_)
      if (!c.empty()) return false;
    return true;
  }

  SVecQ apply(const SVecQ& x) const {
    Accumulator<Q> acc(rows_);
    for (const auto& [j, xj] : x)
      for (const auto& [i, v] : columns_[j]) acc.add_product(i, v, xj);
    return acc.take();
  }

  std::vector<Q> apply(const std::vector<Q>& x) const {
    std::vector<Q> out(rows_, Q(0));
    for (int j = 0; j < cols_; ++j) {
      if (x[j] == 0) continue;
      for (const auto& [i, v] : columns_[j]) out[i] += v * x[j];
    }
    return out;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for (int j = 0; j < cols_; ++j)
      for (const auto& [i, v] : columns_[j]) t.columns_[i].emplace_back(j, v);
    return t;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("SparseMatrix: shape mismatch");
    SparseMatrix out(a.rows_, b.cols_);
    for (int j = 0; j < b.cols_; ++j) out.columns_[j] = a.apply(b.columns_[j]);
    return out;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return a.axpy(Q(1), b); }
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return a.axpy(Q(-1), b); }

  /// this + s * other
  SparseMatrix axpy(const Q& s, const SparseMatrix& other) const {
    SparseMatrix out(rows_, cols_);
    for (int j = 0; j < cols_; ++j) out.columns_[j] = sparse_axpy(columns_[j], s, other.columns_[j]);
    return out;
  }

  SparseMatrix scaled(const Q& s) const {
    SparseMatrix out(rows_, cols_);
    for (int j = 0; j < cols_; ++j) out.columns_[j] = sparse_scaled(columns_[j], s);
    return out;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.columns_ == b.columns_;
  }

  Q trace() const {
    Q t = 0;
    for (int j = 0; j < cols_; ++j) t += at(j, j);
    return t;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SVecQ> columns_;
};

inline SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b) { return a * b - b * a; }

inline SparseMatrix from_dense(const std::vector<std::vector<Q>>& d) {
  const int r = static_cast<int>(d.size());
  const int c = r ? static_cast<int>(d[0].size()) : 0;
  SparseMatrix m(r, c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i) m.add(i, j, d[i][j]);
  return m;
}

}  // namespace hol::rep
