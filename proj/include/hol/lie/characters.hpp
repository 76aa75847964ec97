#pragma once

// Weight systems, Weyl dimensions, tensor products and plethysms for a
// simple Lie algebra or for the Levi factor of one of its parabolics. All
// weights are expressed in the fundamental-weight basis of the ambient
// algebra; a Levi factor only differs in which simple reflections and
// positive roots are in play.

#include <hol/lie/root_system.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hol::lie {

/// Weight -> multiplicity. Signed so virtual characters can be represented.
using Character = std::map<Weight, long>;
/// Dominant highest weight -> multiplicity of that irreducible summand.
using Decomposition = std::map<Weight, long>;

/// The reductive subalgebra generated by the Cartan and the root vectors
/// of a subset of simple nodes (the full algebra when every node is kept).
class Subsystem {
 public:
  Subsystem(const RootSystem& rs, std::vector<char> nodes) : rs_(&rs), nodes_(std::move(nodes)) {
    if (static_cast<int>(nodes_.size()) != rs.rank()) throw std::invalid_argument("Subsystem: node mask size");
    two_rho_ = rs.zero_weight();
    for (int r = 0; r < rs.num_positive(); ++r) {
      const auto& c = rs.roots()[r];
      bool inside = true;
      for (int i = 0; i < rs.rank(); ++i)
        if (!nodes_[i] && c[i] != 0) inside = false;
      if (inside) {
        positive_.push_back(r);
        two_rho_ = two_rho_ + rs.root_weight(r);
      }
    }
  }

  static Subsystem full(const RootSystem& rs) { return Subsystem(rs, std::vector<char>(rs.rank(), 1)); }

  /// Levi factor of the parabolic whose crossed nodes are listed.
  static Subsystem levi(const RootSystem& rs, const std::vector<int>& crossed) {
    std::vector<char> nodes(rs.rank(), 1);
    for (int c : crossed) nodes.at(c) = 0;
    return Subsystem(rs, nodes);
  }

  const RootSystem& roots() const { return *rs_; }
  const std::vector<char>& nodes() const { return nodes_; }
  bool has_node(int i) const { return nodes_[i] != 0; }
  const std::vector<int>& positive_roots() const { return positive_; }
  const Weight& two_rho() const { return two_rho_; }

  bool is_dominant(const Weight& w) const {
    for (int i = 0; i < rs_->rank(); ++i)
      if (nodes_[i] && w[i] < 0) return false;
    return true;
  }

  void require_dominant(const Weight& w, const char* what) const {
    if (static_cast<int>(w.size()) != rs_->rank())
      throw std::invalid_argument(std::string(what) + ": weight length does not match rank");
    if (!is_dominant(w)) throw std::invalid_argument(std::string(what) + ": weight " + format_weight(w) + " is not dominant");
  }

 private:
  const RootSystem* rs_;
  std::vector<char> nodes_;
  std::vector<int> positive_;
  Weight two_rho_;
};

/// Weyl dimension formula, exact.
inline Z weyl_dimension(const Subsystem& sub, const Weight& hw) {
  sub.require_dominant(hw, "weyl_dimension");
  const auto& rs = sub.roots();
  Weight shifted = scaled(hw, 2) + sub.two_rho();
  Q prod = 1;
  for (int r : sub.positive_roots()) {
    const Weight& a = rs.root_weight(r);
    prod *= rational(Z(rs.inner_scaled(shifted, a)), Z(rs.inner_scaled(sub.two_rho(), a)));
  }
  if (prod.get_den() != 1) throw std::logic_error("weyl_dimension: non-integral result");
  return prod.get_num();
}

inline Z weyl_dimension(const RootSystem& rs, const Weight& hw) { return weyl_dimension(Subsystem::full(rs), hw); }

/// Resolves lambda under the dot action w.(lambda) = w(lambda + rho) - rho of
/// the subsystem's Weyl group. Returns nullopt if lambda + rho is singular,
/// otherwise (length of w, dominant w.lambda).
inline std::optional<std::pair<int, Weight>> dot_resolve(const Subsystem& sub, Weight w) {
  const auto& rs = sub.roots();
  int length = 0;
  while (true) {
    int bad = -1;
    for (int i = 0; i < rs.rank(); ++i) {
      if (!sub.has_node(i)) continue;
      if (w[i] == -1) return std::nullopt;
      if (w[i] < -1 && bad < 0) bad = i;
    }
    if (bad < 0) return std::make_pair(length, w);
    // s_i . w = s_i(w) - alpha_i  (shift by rho_i = 1 on kept nodes)
    int k = w[bad] + 1;
    for (int r = 0; r < rs.rank(); ++r) w[r] -= k * static_cast<int>(rs.cartan()(r, bad));
    ++length;
  }
}

struct RhoShift {
  bool singular = true;
  int length = 0;
  Weight dominant;
};

/// Bott-Borel-Weil resolution of a weight for the full Weyl group.
inline RhoShift rho_shift_resolve(const RootSystem& rs, const Weight& lambda) {
  if (static_cast<int>(lambda.size()) != rs.rank()) throw std::invalid_argument("rho_shift_resolve: weight length");
  auto r = dot_resolve(Subsystem::full(rs), lambda);
  if (!r) return {};
  return {false, r->first, r->second};
}

/// Dominant conjugate of w under the ordinary action of the subsystem's Weyl
/// group. `depth` holds the simple-root coordinates of (hw - w) and is
/// updated alongside.
inline void dominant_conjugate(const Subsystem& sub, Weight& w, std::vector<int>& depth) {
  const auto& rs = sub.roots();
  while (true) {
    int bad = -1;
    for (int i = 0; i < rs.rank(); ++i)
      if (sub.has_node(i) && w[i] < 0) {
        bad = i;
        break;
      }
    if (bad < 0) return;
    int k = w[bad];
    rs.reflect(w, bad);
    depth[bad] += k;  // hw - s_i(w) = hw - w + k alpha_i with k < 0
  }
}

/// Full weight system with multiplicities of the irreducible module of
/// highest weight hw (Freudenthal's recursion over the subsystem).
inline Character weight_multiplicities(const Subsystem& sub, const Weight& hw) {
  sub.require_dominant(hw, "weight_multiplicities");
  const auto& rs = sub.roots();
  const int n = rs.rank();
  Character mult;
  mult[hw] = 1;
  std::vector<Weight> pos_weights;
  for (int r : sub.positive_roots()) pos_weights.push_back(rs.root_weight(r));
  std::vector<Weight> simple(n);
  for (int i = 0; i < n; ++i) simple[i] = rs.simple_root_weight(i);
  const Weight hw_plus = hw + sub.two_rho();

  std::map<Weight, std::vector<int>> layer{{hw, std::vector<int>(n, 0)}};
  while (!layer.empty()) {
    std::map<Weight, std::vector<int>> next;
    for (const auto& [w, depth] : layer) {
      for (int i = 0; i < n; ++i) {
        if (!sub.has_node(i)) continue;
        Weight mu = w - simple[i];
        if (next.count(mu) || mult.count(mu)) continue;
        std::vector<int> d = depth;
        d[i] += 1;
        Weight dom = mu;
        std::vector<int> dd = d;
        dominant_conjugate(sub, dom, dd);
        bool inside = std::all_of(dd.begin(), dd.end(), [](int x) { return x >= 0; });
        if (!inside) continue;
        // (|hw+rho|^2 - |mu+rho|^2) m(mu) = 2 sum_{a>0} sum_{k>=1} (mu+k a, a) m(mu+k a)
        long den = rs.inner_scaled(hw - mu, hw_plus + mu);
        long num = 0;
        for (const auto& a : pos_weights) {
          Weight x = mu + a;
          while (true) {
            auto it = mult.find(x);
            if (it == mult.end()) break;
            num += 2 * rs.inner_scaled(x, a) * it->second;
            x = x + a;
          }
        }
        if (den <= 0 || num % den != 0) throw std::logic_error("Freudenthal recursion: inexact step");
        long m = num / den;
        if (m > 0) next.emplace(mu, d);
        if (m > 0) mult[mu] = m;
      }
    }
    layer.swap(next);
  }
  return mult;
}

inline Character weight_multiplicities(const RootSystem& rs, const Weight& hw) {
  return weight_multiplicities(Subsystem::full(rs), hw);
}

inline long character_dimension(const Character& c) {
  long s = 0;
  for (const auto& [w, m] : c) s += m;
  return s;
}

inline Z decomposition_dimension(const Subsystem& sub, const Decomposition& d) {
  Z s = 0;
  for (const auto& [w, m] : d) s += weyl_dimension(sub, w) * m;
  return s;
}

/// Klimyk's formula: V(hw1) (x) V(hw2) via the rho-shifted orbit sum over the
/// weights of V(hw2).
inline Decomposition tensor_decompose(const Subsystem& sub, const Weight& hw1, const Weight& hw2) {
  sub.require_dominant(hw1, "tensor_decompose");
  sub.require_dominant(hw2, "tensor_decompose");
  Decomposition out;
  for (const auto& [mu, m] : weight_multiplicities(sub, hw2)) {
    auto r = dot_resolve(sub, hw1 + mu);
    if (!r) continue;
    out[r->second] += (r->first % 2 ? -m : m);
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second < 0) throw std::logic_error("Klimyk: negative multiplicity");
    it = it->second == 0 ? out.erase(it) : std::next(it);
  }
  return out;
}

inline Decomposition tensor_decompose(const RootSystem& rs, const Weight& a, const Weight& b) {
  return tensor_decompose(Subsystem::full(rs), a, b);
}

/// Peels irreducible characters off an honest character, highest weights
/// first.
inline Decomposition decompose_character(const Subsystem& sub, Character chr) {
  const auto& rs = sub.roots();
  Decomposition out;
  std::map<Weight, Character> memo;
  for (auto it = chr.begin(); it != chr.end();) it = it->second == 0 ? chr.erase(it) : std::next(it);
  while (!chr.empty()) {
    const Weight* best = nullptr;
    long best_h = 0;
    for (const auto& [w, m] : chr) {
      long h = rs.inner_scaled(w, sub.two_rho());
      if (!best || h > best_h) {
        best = &w;
        best_h = h;
      }
    }
    Weight top = *best;
    long m = chr[top];
    if (m < 0 || !sub.is_dominant(top)) throw std::logic_error("decompose_character: not an honest character");
    out[top] += m;
    auto [mit, inserted] = memo.try_emplace(top);
    if (inserted) mit->second = weight_multiplicities(sub, top);
    for (const auto& [w, k] : mit->second) {
      long& slot = chr[w];
      slot -= m * k;
      if (slot == 0) chr.erase(w);
    }
  }
  return out;
}

/// Character of the k-th symmetric power, computed from the weight multiset.
inline Character symmetric_power_character(const Character& chr, int k) {
  if (k < 0) throw std::invalid_argument("symmetric power degree must be >= 0");
  std::vector<const Weight*> basis;
  for (const auto& [w, m] : chr) {
    if (m < 0) throw std::invalid_argument("symmetric power of a virtual character");
    for (long j = 0; j < m; ++j) basis.push_back(&w);
  }
  Character out;
  if (basis.empty() && k > 0) return out;
  const int n = static_cast<int>(basis.size());
  std::vector<int> idx(k, 0);
  Weight zero(chr.empty() ? 0 : chr.begin()->first.size(), 0);
  if (k == 0) {
    out[zero] = 1;
    return out;
  }
  // Enumerate non-decreasing index tuples.
  while (true) {
    Weight w = zero;
    for (int j = 0; j < k; ++j) w = w + *basis[idx[j]];
    out[w] += 1;
    int p = k - 1;
    while (p >= 0 && idx[p] == n - 1) --p;
    if (p < 0) break;
    ++idx[p];
    for (int j = p + 1; j < k; ++j) idx[j] = idx[p];
  }
  return out;
}

inline Character exterior_square_character(const Character& chr) {
  std::vector<const Weight*> basis;
  for (const auto& [w, m] : chr)
    for (long j = 0; j < m; ++j) basis.push_back(&w);
  Character out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) out[*basis[i] + *basis[j]] += 1;
  return out;
}

inline Character shift_character(const Character& chr, const Weight& by) {
  Character out;
  for (const auto& [w, m] : chr) out[w + by] += m;
  return out;
}

/// Plethysm Sym^k V(hw) by character symmetrization and greedy peeling.
inline Decomposition symmetric_power_decompose(const Subsystem& sub, const Weight& hw, int k) {
  sub.require_dominant(hw, "symmetric_power_decompose");
  if (k < 2 || k > 3) throw std::invalid_argument("symmetric_power_decompose: k must be 2 or 3");
  return decompose_character(sub, symmetric_power_character(weight_multiplicities(sub, hw), k));
}

inline Decomposition symmetric_power_decompose(const RootSystem& rs, const Weight& hw, int k) {
  return symmetric_power_decompose(Subsystem::full(rs), hw, k);
}

}  // namespace hol::lie
