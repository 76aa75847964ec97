#pragma once

#include <hol/core/rational.hpp>
#include <hol/lie/root_system.hpp>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hol::rep {

using lie::CartanMatrix;
using lie::RootCoords;
using lie::RootSystem;
using lie::Weight;
using lie::operator+;
using lie::operator-;
using SVecL = SparseVec<long>;

/// Chevalley basis of a simply-laced simple Lie algebra.
///
/// Basis order: coroots h_0..h_{r-1}, then E_alpha for every root in the
/// RootSystem order (positive roots by height, then their negatives).
/// Relations: [h_i, E_a] = <a, h_i> E_a, [E_a, E_-a] = -h_a,
/// [E_a, E_b] = N(a, b) E_{a+b}. Signs are fixed so that every extraspecial
/// pair has N = +1.
class ChevalleyBasis {
 public:
  explicit ChevalleyBasis(const RootSystem& rs) : rs_(std::make_shared<RootSystem>(rs)) { build(); }

  static ChevalleyBasis of_type(const std::string& type) { return ChevalleyBasis(RootSystem::of_type(type)); }

  const RootSystem& roots() const { return *rs_; }
  int rank() const { return rs_->rank(); }
  int dimension() const { return rs_->dimension(); }

  int cartan_index(int i) const { return i; }
  int root_element(int r) const { return rank() + r; }
  bool is_cartan(int a) const { return a < rank(); }
  int root_of(int a) const { return a - rank(); }

  /// Weight of a basis element (zero for the Cartan part).
  Weight weight_of(int a) const { return is_cartan(a) ? rs_->zero_weight() : rs_->root_weight(root_of(a)); }

  /// Structure constant N(a, b) for roots a, b (0 when a + b is not a root).
  int N(int a, int b) const { return n_[static_cast<std::size_t>(a) * rs_->num_roots() + b]; }

  /// Simple root index i and positive root b with alpha = alpha_i + b, for a
  /// positive non-simple root alpha (the extraspecial pair).
  std::pair<int, int> extraspecial(int r) const { return extraspecial_[r]; }

  const SVecL& bracket(int a, int b) const { return table_[static_cast<std::size_t>(a) * dimension() + b]; }

  SVecQ bracket(const SVecQ& x, const SVecQ& y) const {
    Accumulator<Q> acc(dimension());
    for (const auto& [a, xa] : x)
      for (const auto& [b, yb] : y) {
        const Q s = xa * yb;
        for (const auto& [c, v] : bracket(a, b)) acc.add_product(c, s, Q(v));
      }
    return acc.take();
  }

  /// Number of basis triples violating the Jacobi identity.
  long jacobi_failures() const {
    const int d = dimension();
    long failures = 0;
    Accumulator<long> acc(d);
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b)
        for (int c = b + 1; c < d; ++c) {
          accumulate_double(acc, a, b, c);
          accumulate_double(acc, b, c, a);
          accumulate_double(acc, c, a, b);
          if (!acc.take().empty()) ++failures;
        }
    return failures;
  }

 private:
  void accumulate_double(Accumulator<long>& acc, int a, int b, int c) const {
    for (const auto& [e, v] : bracket(b, c))
      for (const auto& [f, w] : bracket(a, e)) acc.add(f, v * w);
  }

  static bool simply_laced(const CartanMatrix& c) {
    for (int i = 0; i < c.rank; ++i)
      for (int j = 0; j < c.rank; ++j)
        if (i != j && c(i, j) < -1) return false;
    return true;
  }

  // Bimultiplicative cocycle on the root lattice.
  int epsilon(const RootCoords& x, const RootCoords& y) const {
    const auto& c = rs_->cartan();
    long parity = 0;
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j)
        if (i == j || (i < j && c(i, j) != 0)) parity += static_cast<long>(x[i]) * y[j];
    return (parity % 2 == 0) ? 1 : -1;
  }

  void build() {
    const auto& c = rs_->cartan();
    if (!simply_laced(c))
      throw std::invalid_argument("chevalley_constants: only simply-laced types are supported (got " + c.type + ")");
    const int nr = rs_->num_roots();
    const int np = rs_->num_positive();
    const int r = rank();
    const auto& roots = rs_->roots();

    n_.assign(static_cast<std::size_t>(nr) * nr, 0);
    for (int a = 0; a < nr; ++a)
      for (int b = 0; b < nr; ++b) {
        int s = rs_->root_index(roots[a] + roots[b]);
        if (s >= 0) n_[static_cast<std::size_t>(a) * nr + b] = epsilon(roots[a], roots[b]);
      }

    // Rescale E_a and E_-a by sign[a] so that extraspecial pairs get N = +1.
    std::vector<int> sign(nr, 1);
    extraspecial_.assign(nr, {-1, -1});
    for (int a = 0; a < np; ++a) {
      if (rs_->height(a) == 1) continue;
      for (int i = 0; i < r; ++i) {
        RootCoords rest = roots[a];
        rest[i] -= 1;
        int b = rs_->root_index(rest);
        if (b < 0) continue;
        extraspecial_[a] = {i, b};
        sign[a] = sign[i] * sign[b] * N(i, b);
        break;
      }
      sign[rs_->negative_of(a)] = sign[a];
    }
    for (int a = 0; a < nr; ++a)
      for (int b = 0; b < nr; ++b) {
        int& v = n_[static_cast<std::size_t>(a) * nr + b];
        if (v == 0) continue;
        int s = rs_->root_index(roots[a] + roots[b]);
        v *= sign[a] * sign[b] * sign[s];
      }

    const int d = dimension();
    table_.assign(static_cast<std::size_t>(d) * d, {});
    auto set = [&](int x, int y, SVecL v) { table_[static_cast<std::size_t>(x) * d + y] = std::move(v); };
    for (int i = 0; i < r; ++i)
      for (int a = 0; a < nr; ++a) {
        long w = rs_->root_weight(a)[i];
        if (w != 0) {
          set(i, r + a, {{r + a, w}});
          set(r + a, i, {{r + a, -w}});
        }
      }
    for (int a = 0; a < nr; ++a)
      for (int b = 0; b < nr; ++b) {
        if (b == rs_->negative_of(a)) {
          SVecL h;
          for (int i = 0; i < r; ++i)
            if (roots[a][i] != 0) h.emplace_back(i, -static_cast<long>(roots[a][i]));
          set(r + a, r + b, std::move(h));
          continue;
        }
        int n = N(a, b);
        if (n != 0) set(r + a, r + b, {{r + rs_->root_index(roots[a] + roots[b]), n}});
      }
  }

  std::shared_ptr<const RootSystem> rs_;
  std::vector<int> n_;
  std::vector<std::pair<int, int>> extraspecial_;
  std::vector<SVecL> table_;
};

}  // namespace hol::rep
