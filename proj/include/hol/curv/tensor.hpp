#pragma once

#include <hol/core/rational.hpp>

#include <map>
#include <stdexcept>
#include <vector>

namespace hol::curv {

/// Exact sparse multi-index array. Zero entries are never stored.
class SparseTensor {
 public:
  SparseTensor() = default;
  explicit SparseTensor(std::vector<int> shape) : shape_(std::move(shape)) {}

  const std::vector<int>& shape() const { return shape_; }
  const std::map<std::vector<int>, Q>& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  Q at(const std::vector<int>& idx) const {
    check(idx);
    auto it = entries_.find(idx);
    return it == entries_.end() ? Q(0) : it->second;
  }

  void add(const std::vector<int>& idx, const Q& v) {
    check(idx);
    if (v == 0) return;
    auto [it, fresh] = entries_.emplace(idx, v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0) entries_.erase(it);
    }
  }

  void set(const std::vector<int>& idx, const Q& v) {
    check(idx);
    if (v == 0)
      entries_.erase(idx);
    else
      entries_[idx] = v;
  }

  /// Row-major flattening, usable as a row for rank computations.
  SVecQ flatten() const {
    SVecQ out;
    for (const auto& [idx, v] : entries_) {
      long k = 0;
      for (std::size_t d = 0; d < shape_.size(); ++d) k = k * shape_[d] + idx[d];
      out.emplace_back(static_cast<int>(k), v);
    }
    return out;
  }

  long flat_size() const {
    long s = 1;
    for (int d : shape_) s *= d;
    return s;
  }

  friend bool operator==(const SparseTensor& a, const SparseTensor& b) {
    return a.shape_ == b.shape_ && a.entries_ == b.entries_;
  }

  /// Entrywise difference; zero iff the tensors agree.
  friend SparseTensor operator-(const SparseTensor& a, const SparseTensor& b) {
    if (a.shape_ != b.shape_) throw std::invalid_argument("SparseTensor: shape mismatch");
    SparseTensor out = a;
    for (const auto& [idx, v] : b.entries_) out.add(idx, -v);
    return out;
  }

 private:
  void check(const std::vector<int>& idx) const {
    if (idx.size() != shape_.size()) throw std::out_of_range("SparseTensor: index rank mismatch");
    for (std::size_t d = 0; d < idx.size(); ++d)
      if (idx[d] < 0 || idx[d] >= shape_[d]) throw std::out_of_range("SparseTensor: index out of range");
  }

  std::vector<int> shape_;
  std::map<std::vector<int>, Q> entries_;
};

}  // namespace hol::curv
