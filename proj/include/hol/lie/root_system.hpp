#pragma once

#include <hol/core/rational.hpp>
#include <hol/lie/cartan.hpp>

#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hol::lie {

/// Integer vector in the basis of fundamental weights.
using Weight = std::vector<int>;
/// Integer vector in the basis of simple roots.
using RootCoords = std::vector<int>;

inline std::string format_weight(const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

inline Weight parse_weight(const std::string& text) {
  Weight w;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) {
        try {
          w.push_back(std::stoi(cur));
        } catch (...) {
          throw std::invalid_argument("bad weight component '" + cur + "'");
        }
        cur.clear();
      }
    } else if (c != '(' && c != ')') {
      cur += c;
    }
  }
  return w;
}

inline Weight operator+(const Weight& a, const Weight& b) {
  Weight r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline Weight operator-(const Weight& a, const Weight& b) {
  Weight r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

inline Weight operator-(const Weight& a) {
  Weight r(a);
  for (auto& x : r) x = -x;
  return r;
}

inline Weight scaled(const Weight& a, int k) {
  Weight r(a);
  for (auto& x : r) x *= k;
  return r;
}

class RootSystem {
 public:
  explicit RootSystem(CartanMatrix cartan) : cartan_(std::move(cartan)) {
    rank_ = cartan_.rank;
    build_weight_gram();
    generate();
  }

  static RootSystem of_type(const std::string& name) { return RootSystem(cartan_matrix(name)); }

  const CartanMatrix& cartan() const { return cartan_; }
  int rank() const { return rank_; }
  const std::string& type() const { return cartan_.type; }

  /// All roots, positive ones first ordered by height, then their negatives
  /// in the same order.
  const std::vector<RootCoords>& roots() const { return roots_; }
  int num_roots() const { return static_cast<int>(roots_.size()); }
  int num_positive() const { return num_positive_; }
  int dimension() const { return num_roots() + rank_; }

  const Weight& root_weight(int r) const { return root_weights_[r]; }
  const std::vector<Weight>& root_weights() const { return root_weights_; }

  /// Index of a root given by simple-root coordinates, or -1.
  int root_index(const RootCoords& c) const {
    auto it = root_lookup_.find(c);
    return it == root_lookup_.end() ? -1 : it->second;
  }

  int negative_of(int r) const { return r < num_positive_ ? r + num_positive_ : r - num_positive_; }

  int height(int r) const { return std::accumulate(roots_[r].begin(), roots_[r].end(), 0); }

  const Weight& rho() const { return rho_; }

  int highest_root() const { return num_positive_ - 1; }

  Weight fundamental(int i) const {
    Weight w(rank_, 0);
    w.at(i) = 1;
    return w;
  }

  Weight zero_weight() const { return Weight(rank_, 0); }

  /// Simple root alpha_i in fundamental-weight coordinates (column i of A).
  Weight simple_root_weight(int i) const {
    Weight w(rank_);
    for (int k = 0; k < rank_; ++k) w[k] = static_cast<int>(cartan_(k, i));
    return w;
  }

  Weight to_weight(const RootCoords& c) const {
    Weight w(rank_, 0);
    for (int k = 0; k < rank_; ++k)
      for (int j = 0; j < rank_; ++j) w[k] += static_cast<int>(cartan_(k, j)) * c[j];
    return w;
  }

  /// Simple-root coordinates of a weight (rational in general).
  std::vector<Q> to_root_coords(const Weight& w) const {
    std::vector<Q> c(rank_, Q(0));
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) c[i] += inv_cartan_[i][j] * w[j];
    return c;
  }

  /// Inner product of weights multiplied by `inner_scale()`; always an integer.
  long inner_scaled(const Weight& a, const Weight& b) const {
    long s = 0;
    for (int i = 0; i < rank_; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < rank_; ++j) s += static_cast<long>(a[i]) * weight_gram_[i][j] * b[j];
    }
    return s;
  }
  long inner_scale() const { return inner_scale_; }

  Q inner(const Weight& a, const Weight& b) const { return rational(Z(inner_scaled(a, b)), Z(inner_scale_)); }

  /// s_i(w) = w - <w, alpha_i^vee> alpha_i.
  void reflect(Weight& w, int i) const {
    int k = w[i];
    if (!k) return;
    for (int r = 0; r < rank_; ++r) w[r] -= k * static_cast<int>(cartan_(r, i));
  }

  bool is_dominant(const Weight& w) const {
    for (int x : w)
      if (x < 0) return false;
    return true;
  }

 private:
  void build_weight_gram() {
    std::vector<std::vector<Q>> a(rank_, std::vector<Q>(rank_));
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) a[i][j] = cartan_(i, j);
    // Gauss-Jordan inverse.
    std::vector<std::vector<Q>> inv(rank_, std::vector<Q>(rank_, Q(0)));
    for (int i = 0; i < rank_; ++i) inv[i][i] = 1;
    for (int c = 0; c < rank_; ++c) {
      int p = c;
      while (p < rank_ && a[p][c] == 0) ++p;
      if (p == rank_) throw std::invalid_argument("Cartan matrix is singular");
      std::swap(a[p], a[c]);
      std::swap(inv[p], inv[c]);
      Q s = 1 / a[c][c];
      for (int j = 0; j < rank_; ++j) {
        a[c][j] *= s;
        inv[c][j] *= s;
      }
      for (int r = 0; r < rank_; ++r) {
        if (r == c || a[r][c] == 0) continue;
        Q f = a[r][c];
        for (int j = 0; j < rank_; ++j) {
          a[r][j] -= f * a[c][j];
          inv[r][j] -= f * inv[c][j];
        }
      }
    }
    inv_cartan_ = inv;
    // (w_a, w_b) = sum_ij inv[i][a] gram[i][j] inv[j][b].
    std::vector<std::vector<Q>> g(rank_, std::vector<Q>(rank_, Q(0)));
    for (int x = 0; x < rank_; ++x)
      for (int y = 0; y < rank_; ++y)
        for (int i = 0; i < rank_; ++i)
          for (int j = 0; j < rank_; ++j) g[x][y] += inv[i][x] * Q(cartan_.gram[i][j]) * inv[j][y];
    Z den = 1;
    for (auto& row : g)
      for (auto& q : row) den = lcm(den, q.get_den());
    inner_scale_ = den.get_si();
    weight_gram_.assign(rank_, std::vector<long>(rank_));
    for (int x = 0; x < rank_; ++x)
      for (int y = 0; y < rank_; ++y) weight_gram_[x][y] = Q(g[x][y] * Q(den)).get_num().get_si();
  }

  void generate() {
    const std::size_t cap = 20000;
    std::vector<RootCoords> pos;
    std::map<RootCoords, int> lookup;
    for (int i = 0; i < rank_; ++i) {
      RootCoords c(rank_, 0);
      c[i] = 1;
      lookup[c] = static_cast<int>(pos.size());
      pos.push_back(c);
    }
    for (std::size_t idx = 0; idx < pos.size(); ++idx) {
      if (pos.size() > cap) throw std::invalid_argument("root generation exceeded cap; Cartan matrix not of finite type");
      const RootCoords beta = pos[idx];
      Weight bw = to_weight(beta);
      for (int i = 0; i < rank_; ++i) {
        // q = largest k with beta - k alpha_i a root.
        int q = 0;
        RootCoords down = beta;
        while (true) {
          down[i] -= 1;
          if (lookup.count(down)) {
            ++q;
          } else {
            break;
          }
        }
        int p = q - bw[i];
        if (p > 0) {
          RootCoords up = beta;
          up[i] += 1;
          if (!lookup.count(up)) {
            lookup[up] = static_cast<int>(pos.size());
            pos.push_back(up);
          }
        }
      }
    }
    std::stable_sort(pos.begin(), pos.end(), [](const RootCoords& a, const RootCoords& b) {
      int ha = std::accumulate(a.begin(), a.end(), 0), hb = std::accumulate(b.begin(), b.end(), 0);
      if (ha != hb) return ha < hb;
      return a > b;
    });
    num_positive_ = static_cast<int>(pos.size());
    roots_ = pos;
    for (const auto& c : pos) {
      RootCoords n(c);
      for (auto& x : n) x = -x;
      roots_.push_back(n);
    }
    for (int r = 0; r < num_roots(); ++r) {
      root_lookup_[roots_[r]] = r;
      root_weights_.push_back(to_weight(roots_[r]));
    }
    rho_.assign(rank_, 1);
  }

  CartanMatrix cartan_;
  int rank_ = 0;
  int num_positive_ = 0;
  std::vector<RootCoords> roots_;
  std::vector<Weight> root_weights_;
  std::map<RootCoords, int> root_lookup_;
  Weight rho_;
  std::vector<std::vector<Q>> inv_cartan_;
  std::vector<std::vector<long>> weight_gram_;
  long inner_scale_ = 1;
};

}  // namespace hol::lie
