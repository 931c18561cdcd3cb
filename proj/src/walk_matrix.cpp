#include "dgs/walk_matrix.hpp"

#include "dgs/exact_linalg.hpp"

#include <stdexcept>
#include <string>

namespace dgs {

namespace {

std::vector<std::vector<int>> neighbour_lists(const Graph& g) {
  std::vector<std::vector<int>> nb(g.order());
  for (int i = 0; i < g.order(); ++i)
    for (int j = 0; j < g.order(); ++j)
      if (g.adjacent(i, j)) nb[i].push_back(j);
  return nb;
}

std::vector<BigIntVector> walk_vectors(const Graph& g, int count) {
  const int n = g.order();
  const auto nb = neighbour_lists(g);
  std::vector<BigIntVector> out;
  out.reserve(static_cast<std::size_t>(count));
  out.push_back(BigIntVector::Constant(n, BigInt(1)));
  for (int j = 1; j < count; ++j) {
    const BigIntVector& prev = out.back();
    BigIntVector next(n);
    for (int i = 0; i < n; ++i) {
      BigInt s = 0;
      for (int u : nb[i]) s += prev(u);
      next(i) = std::move(s);
    }
    out.push_back(std::move(next));
  }
  return out;
}

BigIntMatrix columns(const std::vector<BigIntVector>& powers, const std::vector<int>& exponents, int n) {
  BigIntMatrix m(n, static_cast<Index>(exponents.size()));
  for (std::size_t c = 0; c < exponents.size(); ++c) m.col(static_cast<Index>(c)) = powers[exponents[c]];
  return m;
}

}  // namespace

BigIntMatrix halve_exact(const BigIntMatrix& m, const char* what) {
  BigIntMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      if (mpz_odd_p(m(i, j).get_mpz_t()))
        throw std::logic_error(std::string("internal invariant violated: ") + what + " has an odd entry at (" +
                               std::to_string(i) + "," + std::to_string(j) + ")");
      mpz_divexact_ui(out(i, j).get_mpz_t(), m(i, j).get_mpz_t(), 2);
    }
  return out;
}

BigIntMatrix walk_matrix(const Graph& g) {
  const int n = g.order();
  const auto powers = walk_vectors(g, n);
  BigIntMatrix w(n, n);
  for (int j = 0; j < n; ++j) w.col(j) = powers[j];
  return w;
}

WalkBundle build_walk_bundle(const Graph& g) {
  WalkBundle b;
  const int n = g.order();
  b.n = n;
  b.k = (n + 1) / 2;
  const bool odd = n % 2 == 1;
  b.powers = walk_vectors(g, 2 * n - 1);

  std::vector<int> all, even_all, til, til1;
  for (int j = 0; j < n; ++j) all.push_back(j), even_all.push_back(2 * j);
  for (int j = odd ? 1 : 0; j < b.k; ++j) til.push_back(j), til1.push_back(2 * j);

  b.w = columns(b.powers, all, n);
  b.w1 = columns(b.powers, even_all, n);
  if (odd) b.w1.col(0) *= BigInt(2);
  b.wtil = columns(b.powers, til, n);
  b.wtil1 = columns(b.powers, til1, n);

  const BigIntMatrix wt = b.w.transpose();
  b.half_gram = halve_exact(wt * b.wtil1, "W^T * Wtil1");
  b.full_half_gram = halve_exact(wt * b.w1, "W^T * W1");
  return b;
}

BigInt det_walk(const Graph& g) { return det_bareiss(walk_matrix(g)); }

Valuation2 valuation2(const BigInt& x) {
  if (x == 0) throw std::domain_error("valuation2: 2-adic valuation of zero is undefined");
  Valuation2 v;
  v.sign = x < 0 ? -1 : 1;
  const BigInt mag = abs(x);
  v.alpha = mpz_scan1(mag.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(v.odd_part.get_mpz_t(), mag.get_mpz_t(), v.alpha);
  return v;
}

}  // namespace dgs
