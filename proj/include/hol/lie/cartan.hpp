#pragma once

#include <hol/core/rational.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace hol::lie {

using IntMatrix = std::vector<std::vector<long>>;

/// Cartan matrix with a_ij = <alpha_i^vee, alpha_j> (Bourbaki node numbering),
/// together with a symmetrizing Gram matrix of the simple roots.
struct CartanMatrix {
  std::string type;  // "E7", "A1", ... or "custom"
  int rank = 0;
  IntMatrix entries;
  IntMatrix gram;  // integer multiple of (alpha_i, alpha_j)

  long operator()(int i, int j) const { return entries[i][j]; }
};

namespace detail {

inline CartanMatrix from_gram(std::string type, IntMatrix gram) {
  CartanMatrix c;
  c.type = std::move(type);
  c.rank = static_cast<int>(gram.size());
  c.entries.assign(c.rank, std::vector<long>(c.rank, 0));
  for (int i = 0; i < c.rank; ++i)
    for (int j = 0; j < c.rank; ++j) c.entries[i][j] = 2 * gram[i][j] / gram[i][i];
  c.gram = std::move(gram);
  return c;
}

inline IntMatrix zero(int n) { return IntMatrix(n, std::vector<long>(n, 0)); }

inline void link(IntMatrix& g, int i, int j, long v) {
  g[i][j] = v;
  g[j][i] = v;
}

}  // namespace detail

/// Builds the Cartan matrix of a simple Lie algebra from notation such as
/// "E7", "A1", "D4", "G2". Nodes are numbered as in Bourbaki.
inline CartanMatrix cartan_matrix(const std::string& name) {
  if (name.size() < 2) throw std::invalid_argument("bad Dynkin type: '" + name + "'");
  char t = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  int n = 0;
  try {
    n = std::stoi(name.substr(1));
  } catch (...) {
    throw std::invalid_argument("bad Dynkin type: '" + name + "'");
  }
  using detail::link;
  IntMatrix g = detail::zero(n);
  std::string type = std::string(1, t) + std::to_string(n);
  switch (t) {
    case 'A':
      if (n < 1) break;
      for (int i = 0; i < n; ++i) g[i][i] = 2;
      for (int i = 0; i + 1 < n; ++i) link(g, i, i + 1, -1);
      return detail::from_gram(type, g);
    case 'B':
      if (n < 2) break;
      for (int i = 0; i < n - 1; ++i) g[i][i] = 2;
      g[n - 1][n - 1] = 1;
      for (int i = 0; i + 1 < n; ++i) link(g, i, i + 1, -1);
      return detail::from_gram(type, g);
    case 'C':
      if (n < 2) break;
      for (int i = 0; i < n - 1; ++i) g[i][i] = 2;
      g[n - 1][n - 1] = 4;
      for (int i = 0; i + 2 < n; ++i) link(g, i, i + 1, -1);
      link(g, n - 2, n - 1, -2);
      return detail::from_gram(type, g);
    case 'D':
      if (n < 3) break;
      for (int i = 0; i < n; ++i) g[i][i] = 2;
      for (int i = 0; i + 2 < n; ++i) link(g, i, i + 1, -1);
      link(g, n - 3, n - 1, -1);
      return detail::from_gram(type, g);
    case 'E':
      if (n < 6 || n > 8) break;
      for (int i = 0; i < n; ++i) g[i][i] = 2;
      link(g, 0, 2, -1);
      link(g, 1, 3, -1);
      for (int i = 2; i + 1 < n; ++i) link(g, i, i + 1, -1);
      return detail::from_gram(type, g);
    case 'F':
      if (n != 4) break;
      g[0][0] = g[1][1] = 4;
      g[2][2] = g[3][3] = 2;
      link(g, 0, 1, -2);
      link(g, 1, 2, -2);
      link(g, 2, 3, -1);
      return detail::from_gram(type, g);
    case 'G':
      if (n != 2) break;
      g[0][0] = 2;
      g[1][1] = 6;
      link(g, 0, 1, -3);
      return detail::from_gram(type, g);
    default:
      break;
  }
  throw std::invalid_argument("unsupported Dynkin type: '" + name + "'");
}

/// Leading principal minors of an integer matrix, exact.
inline std::vector<Q> leading_minors(const IntMatrix& m) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<Q>> a(n, std::vector<Q>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
  std::vector<Q> minors;
  Q det = 1;
  for (int k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      minors.push_back(0);
      for (int r = k; r < n; ++r) minors.push_back(0);
      minors.resize(n);
      return minors;
    }
    det *= a[k][k];
    minors.push_back(det);
    for (int r = k + 1; r < n; ++r) {
      Q f = a[r][k] / a[k][k];
      for (int c = k; c < n; ++c) a[r][c] -= f * a[k][c];
    }
  }
  return minors;
}

/// Validates a user-supplied Cartan matrix and recovers a symmetrization.
/// Throws std::invalid_argument with a diagnostic if the matrix is not of
/// finite type.
inline CartanMatrix validate_cartan(const IntMatrix& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) throw std::invalid_argument("Cartan matrix: empty");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("Cartan matrix: not square");
  for (int i = 0; i < n; ++i) {
    if (a[i][i] != 2) throw std::invalid_argument("Cartan matrix: diagonal entry != 2");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a[i][j] > 0) throw std::invalid_argument("Cartan matrix: positive off-diagonal entry");
      if ((a[i][j] == 0) != (a[j][i] == 0))
        throw std::invalid_argument("Cartan matrix: zero pattern not symmetric");
    }
  }
  // Symmetrize: find d_i > 0 with d_i a_ij = d_j a_ji, via a spanning forest.
  std::vector<Q> d(n, Q(0));
  for (int root = 0; root < n; ++root) {
    if (d[root] != 0) continue;
    d[root] = 1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (i == j || a[i][j] == 0) continue;
        Q dj = d[i] * Q(a[i][j]) / Q(a[j][i]);
        if (d[j] == 0) {
          d[j] = dj;
          stack.push_back(j);
        } else if (d[j] != dj) {
          throw std::invalid_argument("Cartan matrix: not symmetrizable");
        }
      }
    }
  }
  // gram_ij = d_i a_ij / 2 * (common denominator); want gram_ii = 2 d_i up to scale.
  Z den = 1;
  for (const auto& q : d) den = lcm(den, q.get_den());
  IntMatrix g(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Q v = d[i] * Q(a[i][j]) * Q(den);
      g[i][j] = v.get_num().get_si();
    }
  for (const auto& m : leading_minors(g))
    if (m <= 0) throw std::invalid_argument("Cartan matrix: not of finite type (symmetrization not positive definite)");
  CartanMatrix c;
  c.type = "custom";
  c.rank = n;
  c.entries = a;
  c.gram = g;
  return c;
}

}  // namespace hol::lie
