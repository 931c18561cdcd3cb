#include "dgs/exact_linalg.hpp"
#include "dgs/f2_matrix.hpp"
#include "dgs/walk_matrix.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace dgs;

namespace {

Graph example20() {
  std::ifstream f(DGS_TEST_DATA "/dgs20.txt");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_adjacency_text(ss.str());
}

}  // namespace

TEST(WalkMatrix, TinyGraphs) {
  EXPECT_EQ(walk_matrix(Graph::empty(1)), BigIntMatrix::Constant(1, 1, BigInt(1)));
  EXPECT_EQ(walk_matrix(Graph::complete(2)), BigIntMatrix::Constant(2, 2, BigInt(1)));
  EXPECT_EQ(det_walk(Graph::empty(1)), 1);
  EXPECT_EQ(det_walk(Graph::complete(2)), 0);
}

TEST(WalkMatrix, EntriesCountWalks) {
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t s = 0; s < 8; ++s) {
      const Graph g = random_gnp_half(n, s * 31 + n);
      const BigIntMatrix w = walk_matrix(g);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < std::min(n, 4); ++j) EXPECT_EQ(w(i, j), oracle::count_walks(g, i, j));
    }
}

TEST(WalkMatrix, AllSmallGraphsUncontrollable) {
  for (int n = 2; n <= 5; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs); ++code)
      EXPECT_EQ(det_walk(from_upper_triangle_code(n, code)), 0) << n << ' ' << code;
  }
}

TEST(WalkMatrix, ExampleDeterminant) {
  const BigInt b("1441015072283350333659506148951301725162859");
  EXPECT_EQ(BigInt(7) * 11 * 383 * 210857 * BigInt("231734663160530708115251000501057"), b);
  EXPECT_EQ(det_walk(example20()), -(BigInt(1) << 13) * b);
  const Valuation2 v = valuation2(det_walk(example20()));
  EXPECT_EQ(v.alpha, 13u);
  EXPECT_EQ(v.odd_part, b);
  EXPECT_EQ(v.sign, -1);
  EXPECT_EQ(rank_f2(F2Matrix::from_integer(walk_matrix(example20()))), 10);
}

TEST(Valuation, Cases) {
  const Valuation2 a = valuation2(-12);
  EXPECT_EQ(a.alpha, 2u);
  EXPECT_EQ(a.odd_part, 3);
  EXPECT_EQ(a.sign, -1);
  const Valuation2 b = valuation2(1);
  EXPECT_EQ(b.alpha, 0u);
  EXPECT_EQ(b.odd_part, 1);
  EXPECT_EQ(b.sign, 1);
  EXPECT_THROW(valuation2(0), std::domain_error);
}

TEST(WalkBundle, ShapesAndIntegrality) {
  for (int n = 1; n <= 24; ++n) {
    const Graph g = random_gnp_half(n, 500 + n);
    const WalkBundle b = build_walk_bundle(g);
    const int k = (n + 1) / 2;
    EXPECT_EQ(b.k, k);
    EXPECT_EQ(b.w.cols(), n);
    EXPECT_EQ(b.w1.cols(), n);
    EXPECT_EQ(b.wtil.cols(), n % 2 == 0 ? k : k - 1);
    EXPECT_EQ(b.wtil1.cols(), b.wtil.cols());
    EXPECT_EQ(b.half_gram.rows(), n);
    EXPECT_EQ(BigIntMatrix(b.half_gram * BigInt(2)), BigIntMatrix(b.w.transpose() * b.wtil1));
    EXPECT_EQ(BigIntMatrix(b.full_half_gram * BigInt(2)), BigIntMatrix(b.w.transpose() * b.w1));
    const BigIntMatrix a = g.adjacency_matrix<BigInt>();
    BigIntVector v = BigIntVector::Constant(n, BigInt(1));
    for (int j = 0; j < 2 * n - 1; ++j) {
      EXPECT_EQ(b.powers[j], v);
      v = a * v;
    }
    if (n % 2 == 1) EXPECT_EQ(b.w1.col(0), BigIntVector::Constant(n, BigInt(2)));
  }
}

TEST(WalkBundle, EvenOrderGramIsEven) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Graph g = random_gnp_half(2 * (1 + static_cast<int>(s % 10)), s);
    const BigIntMatrix w = walk_matrix(g);
    EXPECT_EQ(oracle::rank_mod2(BigIntMatrix(w.transpose() * w)), 0);
  }
}

TEST(WalkBundle, HalveExactRejectsOdd) {
  BigIntMatrix m = BigIntMatrix::Constant(2, 2, BigInt(2));
  m(1, 0) = 3;
  EXPECT_THROW(halve_exact(m, "test"), std::logic_error);
}
