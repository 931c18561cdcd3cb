#pragma once

// Independent reference implementations used to cross-check the library.
// Deliberately naive: cofactor / permutation enumeration, Lagrange
// interpolation, explicit walk counting.

#include "dgs/exact_linalg.hpp"
#include "dgs/graph.hpp"
#include "dgs/random.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using dgs::BigInt;
using dgs::BigIntMatrix;
using dgs::Index;
using dgs::Rational;

// Laplace expansion along the first row.
inline BigInt det_cofactor(const BigIntMatrix& m) {
  const Index n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  BigInt sum = 0;
  for (Index j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    BigIntMatrix minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r)
      for (Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    BigInt t = m(0, j) * det_cofactor(minor);
    sum += (j % 2 == 0) ? t : BigInt(-t);
  }
  return sum;
}

inline void subsets(int n, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// gcd of all k x k minors (the k-th determinantal divisor).
inline BigInt determinantal_divisor(const BigIntMatrix& m, int k) {
  std::vector<std::vector<int>> rs, cs;
  subsets(static_cast<int>(m.rows()), k, rs);
  subsets(static_cast<int>(m.cols()), k, cs);
  BigInt g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      BigIntMatrix sub(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = m(r[i], c[j]);
      BigInt d = det_cofactor(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  return g;
}

// Coefficients of det(xI - m) by Lagrange interpolation through x = 0..n,
// each value an exact Bareiss determinant.
inline std::vector<BigInt> char_poly_interpolated(const BigIntMatrix& m) {
  const Index n = m.rows();
  std::vector<Rational> poly(static_cast<std::size_t>(n + 1), Rational(0));  // poly[i] = coeff of x^i
  for (Index k = 0; k <= n; ++k) {
    BigIntMatrix shifted = -m;
    for (Index i = 0; i < n; ++i) shifted(i, i) += BigInt(k);
    const BigInt value = dgs::det_bareiss(shifted);
    // basis polynomial prod_{j != k} (x - j) / (k - j)
    std::vector<Rational> basis{Rational(1)};
    Rational denom(1);
    for (Index j = 0; j <= n; ++j) {
      if (j == k) continue;
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t t = 0; t < basis.size(); ++t) {
        next[t + 1] += basis[t];
        next[t] -= basis[t] * Rational(BigInt(j));
      }
      basis = std::move(next);
      denom *= Rational(BigInt(k - j));
    }
    for (std::size_t t = 0; t < basis.size(); ++t) poly[t] += basis[t] * Rational(value) / denom;
  }
  std::vector<BigInt> out;  // out[i] = c_i, coefficient of x^{n-i}
  for (Index i = 0; i <= n; ++i) {
    Rational c = poly[static_cast<std::size_t>(n - i)];
    c.canonicalize();
    if (c.get_den() != 1) throw std::logic_error("interpolated char poly is not integral");
    out.push_back(c.get_num());
  }
  return out;
}

// Number of walks of length len starting at v.
inline BigInt count_walks(const dgs::Graph& g, int v, int len) {
  if (len == 0) return 1;
  BigInt total = 0;
  for (int u = 0; u < g.order(); ++u)
    if (g.adjacent(v, u)) total += count_walks(g, u, len - 1);
  return total;
}

inline bool isomorphic_brute(const dgs::Graph& g, const dgs::Graph& h) {
  if (g.order() != h.order()) return false;
  const int n = g.order();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j) ok = g.adjacent(i, j) == h.adjacent(p[i], p[j]);
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// Rank over GF(2) by plain Gaussian elimination on a 0/1 table.
inline Index rank_mod2(const BigIntMatrix& m) {
  std::vector<std::vector<int>> a(static_cast<std::size_t>(m.rows()), std::vector<int>(m.cols()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) a[i][j] = mpz_odd_p(m(i, j).get_mpz_t()) ? 1 : 0;
  Index rank = 0;
  for (Index c = 0; c < m.cols() && rank < m.rows(); ++c) {
    Index p = rank;
    while (p < m.rows() && !a[p][c]) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[rank]);
    for (Index r = 0; r < m.rows(); ++r)
      if (r != rank && a[r][c])
        for (Index j = 0; j < m.cols(); ++j) a[r][j] ^= a[rank][j];
    ++rank;
  }
  return rank;
}

// Prime factorisation by trial division (small inputs only).
inline std::map<unsigned long, unsigned> factor_trial(unsigned long x) {
  std::map<unsigned long, unsigned> f;
  for (unsigned long p = 2; p * p <= x; ++p)
    while (x % p == 0) ++f[p], x /= p;
  if (x > 1) ++f[x];
  return f;
}

inline BigIntMatrix random_matrix(std::mt19937_64& rng, Index n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  BigIntMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

inline BigIntMatrix matmul(const BigIntMatrix& a, const BigIntMatrix& b) { return a * b; }

// Graph with a planted single-cell GM partition on cell {0..c-1}: the cell
// induces a random regular graph (complete, empty, perfect matching or its
// complement), each outside vertex sees 0, c/2 or c cell vertices.
inline dgs::Graph planted_gm_graph(int n, int c, std::uint64_t seed, std::vector<int>& cell) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> a(static_cast<std::size_t>(n) * n, 0);
  auto set = [&](int i, int j, bool v) { a[i * n + j] = a[j * n + i] = v ? 1 : 0; };
  const int kind = static_cast<int>(rng() % 4);
  for (int i = 0; i < c; ++i)
    for (int j = i + 1; j < c; ++j) {
      const bool matched = (i % 2 == 0 && j == i + 1);
      set(i, j, kind == 0 ? true : kind == 1 ? false : kind == 2 ? matched : !matched);
    }
  for (int v = c; v < n; ++v) {
    const int mode = static_cast<int>(rng() % 4);  // half the outside vertices see c/2
    std::vector<int> idx(c);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    const int count = mode == 0 ? 0 : mode == 1 ? c : c / 2;
    for (int t = 0; t < c; ++t) set(v, idx[t], t < count);
  }
  for (int i = c; i < n; ++i)
    for (int j = i + 1; j < n; ++j) set(i, j, rng() & 1);
  cell.resize(c);
  std::iota(cell.begin(), cell.end(), 0);
  return dgs::Graph(n, std::move(a));
}

}  // namespace oracle
