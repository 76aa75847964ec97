#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hol {

using Q = mpq_class;
using Z = mpz_class;

inline Q rational(const Z& num, const Z& den = 1) {
  Q q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Q& q) { return q.get_str(); }
inline std::string to_string(const Z& z) { return z.get_str(); }

inline Z lcm(const Z& a, const Z& b) {
  Z r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Z gcd(const Z& a, const Z& b) {
  Z r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Parses "n", "n/d" or "-n/d".
inline Q parse_rational(const std::string& s) {
  Q q(s, 10);
  q.canonicalize();
  return q;
}

// Sparse vectors are sorted (index, value) lists without stored zeros.
template <class T>
using SparseVec = std::vector<std::pair<int, T>>;

using SVecQ = SparseVec<Q>;
using SVecZ = SparseVec<Z>;

template <class T>
void sort_and_compress(SparseVec<T>& v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    int idx = v[i].first;
    T acc = v[i].second;
    std::size_t j = i + 1;
    for (; j < v.size() && v[j].first == idx; ++j) acc += v[j].second;
    if (acc != 0) v[out++] = {idx, acc};
    i = j;
  }
  v.resize(out);
}

/// Dense scratch accumulator indexed by integers; tracks touched slots so that
/// extraction and reset are proportional to the number of nonzeros.
template <class T>
class Accumulator {
 public:
  explicit Accumulator(std::size_t size = 0) : data_(size), used_(size, 0) {}

  void resize(std::size_t size) {
    data_.assign(size, T(0));
    used_.assign(size, 0);
    touched_.clear();
  }

  void add(int i, const T& v) {
    if (!used_[i]) {
      used_[i] = 1;
      touched_.push_back(i);
      data_[i] = v;
    } else {
      data_[i] += v;
    }
  }

  void add_product(int i, const T& a, const T& b) {
    if (!used_[i]) {
      used_[i] = 1;
      touched_.push_back(i);
      data_[i] = a * b;
    } else {
      data_[i] += a * b;
    }
  }

  /// Returns the accumulated sparse vector and clears the accumulator.
  SparseVec<T> take() {
    std::sort(touched_.begin(), touched_.end());
    SparseVec<T> out;
    out.reserve(touched_.size());
    for (int i : touched_) {
      if (data_[i] != 0) out.emplace_back(i, data_[i]);
      used_[i] = 0;
      data_[i] = 0;
    }
    touched_.clear();
    return out;
  }

  std::size_t size() const { return data_.size(); }

 private:
  std::vector<T> data_;
  std::vector<char> used_;
  std::vector<int> touched_;
};

template <class T>
T sparse_dot(const SparseVec<T>& a, const SparseVec<T>& b) {
  T acc = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      ++i;
    } else if (a[i].first > b[j].first) {
      ++j;
    } else {
      acc += a[i].second * b[j].second;
      ++i;
      ++j;
    }
  }
  return acc;
}

template <class T>
T sparse_dot_dense(const SparseVec<T>& a, const std::vector<T>& b) {
  T acc = 0;
  for (const auto& [i, v] : a) acc += v * b[i];
  return acc;
}

template <class T>
SparseVec<T> sparse_scaled(const SparseVec<T>& a, const T& s) {
  SparseVec<T> out;
  if (s == 0) return out;
  out.reserve(a.size());
  for (const auto& [i, v] : a) out.emplace_back(i, v * s);
  return out;
}

template <class T>
SparseVec<T> sparse_axpy(const SparseVec<T>& a, const T& s, const SparseVec<T>& b) {
  // a + s*b
  SparseVec<T> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      T v = s * b[j].second;
      if (v != 0) out.emplace_back(b[j].first, v);
      ++j;
    } else {
      T v = a[i].second + s * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

template <class T>
std::vector<T> to_dense(const SparseVec<T>& a, std::size_t n) {
  std::vector<T> out(n, T(0));
  for (const auto& [i, v] : a) out[i] = v;
  return out;
}

template <class T>
SparseVec<T> to_sparse(const std::vector<T>& a) {
  SparseVec<T> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) out.emplace_back(static_cast<int>(i), a[i]);
  return out;
}

/// Multiplies a rational vector by the lcm of its denominators and divides by
/// the gcd of the numerators; the result is the primitive integer vector on
/// the same ray (first nonzero entry keeps its sign).
inline SVecZ primitive_integer(const SVecQ& v) {
  Z den = 1;
  for (const auto& [i, q] : v) den = lcm(den, q.get_den());
  SVecZ out;
  out.reserve(v.size());
  Z g = 0;
  for (const auto& [i, q] : v) {
    Z z = q.get_num() * (den / q.get_den());
    g = gcd(g, z);
    out.emplace_back(i, z);
  }
  if (g > 1)
    for (auto& e : out) e.second /= g;
  return out;
}

inline SVecQ to_q(const SVecZ& v) {
  SVecQ out;
  out.reserve(v.size());
  for (const auto& [i, z] : v) out.emplace_back(i, Q(z));
  return out;
}

}  // namespace hol
