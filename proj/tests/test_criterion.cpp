#include "dgs/criterion.hpp"
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

std::vector<BigInt> big(std::initializer_list<long> xs) {
  std::vector<BigInt> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// F_n membership decided from scratch: W from explicit adjacency products,
// Bareiss determinant, then trial factorisation.
bool in_fn_by_oracle(const Graph& g, bool& decided) {
  const int n = g.order();
  BigIntMatrix w(n, n);
  std::vector<BigInt> col(n, BigInt(1));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) w(i, j) = col[i];
    std::vector<BigInt> next(n, BigInt(0));
    for (int i = 0; i < n; ++i)
      for (int v = 0; v < n; ++v)
        if (g.adjacent(i, v)) next[i] += col[v];
    col = std::move(next);
  }
  BigInt d = det_bareiss(w);
  decided = true;
  if (d == 0) return false;
  d = abs(d);
  unsigned long alpha = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++alpha;
  }
  if (alpha != static_cast<unsigned long>(n / 2)) return false;
  if (!d.fits_ulong_p()) {
    decided = false;
    return false;
  }
  for (const auto& [p, e] : oracle::factor_trial(d.get_ui()))
    if (e > 1) return false;
  return true;
}

}  // namespace

TEST(Criterion, WorkedExampleIsDgsByExtended) {
  const DgsVerdict v = certify(example20());
  EXPECT_EQ(v.kind, VerdictKind::DgsByExtended);
  EXPECT_EQ(v.fn_clause, Clause::Valuation);
  EXPECT_EQ(v.extended_clause, Clause::None);
  const BigInt b("1441015072283350333659506148951301725162859");
  EXPECT_EQ(v.evidence.det_w, -(BigInt(1) << 13) * b);
  ASSERT_TRUE(v.evidence.rank2_w);
  EXPECT_EQ(*v.evidence.rank2_w, 10);
  ASSERT_TRUE(v.evidence.snf_diag);
  std::vector<BigInt> expected(10, BigInt(1));
  for (int i = 0; i < 7; ++i) expected.emplace_back(2);
  expected.emplace_back(4);
  expected.emplace_back(4);
  expected.push_back(4 * b);
  EXPECT_EQ(*v.evidence.snf_diag, expected);
  ASSERT_TRUE(v.evidence.snf_shape);
  EXPECT_TRUE(v.evidence.snf_shape->matches);
  EXPECT_EQ(v.evidence.snf_shape->b, b);
  ASSERT_FALSE(v.evidence.containment.empty());
  EXPECT_EQ(v.evidence.containment.front().variant, "standard");
  EXPECT_TRUE(v.evidence.containment.front().holds);
  ASSERT_TRUE(v.evidence.squarefree);
  EXPECT_EQ(v.evidence.squarefree->status, SquarefreeStatus::SquareFree);
}

TEST(Criterion, TrivialGraphs) {
  EXPECT_EQ(certify(Graph::empty(1)).kind, VerdictKind::DgsByFn);
  const DgsVerdict k2 = certify(Graph::complete(2));
  EXPECT_EQ(k2.kind, VerdictKind::NotControllable);
  EXPECT_EQ(k2.fn_clause, Clause::Controllability);
  EXPECT_FALSE(k2.is_dgs());
  for (int n = 2; n <= 6; ++n) {
    EXPECT_EQ(certify(Graph::empty(n)).kind, VerdictKind::NotControllable);
    EXPECT_EQ(certify(Graph::complete(n)).kind, VerdictKind::NotControllable);
  }
}

TEST(Criterion, FnAgreesWithIndependentComputation) {
  int members = 0, decided_count = 0;
  for (int n = 6; n <= 11; ++n)
    for (std::uint64_t s = 0; s < 60; ++s) {
      const Graph g = random_gnp_half(n, derive_sample_seed(11, n, s));
      bool decided = false;
      const bool expected = in_fn_by_oracle(g, decided);
      if (!decided) continue;
      ++decided_count;
      const DgsVerdict v = check_fn(g);
      EXPECT_EQ(v.kind == VerdictKind::DgsByFn, expected) << encode_graph6(g);
      members += expected;
    }
  EXPECT_GT(decided_count, 300);
  EXPECT_GT(members, 20);
}

TEST(Criterion, FnImpliesExtended) {
  int members = 0;
  for (int n = 5; n <= 16; ++n)
    for (std::uint64_t s = 0; s < 40; ++s) {
      const Graph g = random_gnp_half(n, derive_sample_seed(12, n, s));
      const DgsVerdict fn = check_fn(g);
      if (fn.kind != VerdictKind::DgsByFn) continue;
      ++members;
      const DgsVerdict ext = check_extended(g);
      EXPECT_EQ(ext.kind, VerdictKind::DgsByExtended) << n << ' ' << encode_graph6(g) << ' ' << to_string(ext.extended_clause);
    }
  EXPECT_GT(members, 40);
}

TEST(Criterion, CertifyIsFnThenExtended) {
  for (int n = 4; n <= 14; ++n)
    for (std::uint64_t s = 0; s < 20; ++s) {
      const Graph g = random_gnp_half(n, derive_sample_seed(13, n, s));
      const DgsVerdict c = certify(g), fn = check_fn(g), ext = check_extended(g);
      if (fn.kind == VerdictKind::DgsByFn) {
        EXPECT_EQ(c.kind, VerdictKind::DgsByFn);
      } else if (fn.kind == VerdictKind::NotControllable) {
        EXPECT_EQ(c.kind, VerdictKind::NotControllable);
      } else if (ext.is_dgs()) {
        EXPECT_EQ(c.kind, VerdictKind::DgsByExtended);
      } else {
        EXPECT_FALSE(c.is_dgs());
      }
    }
}

TEST(Criterion, UnknownWhenBudgetTooSmall) {
  // The example's odd part has a 33-digit prime cofactor; with trial
  // division to 10 and no rho or ECM its 6-digit factor cannot be found.
  FactorBudget tiny;
  tiny.trial_bound = 10;
  tiny.rho_iterations = 1;
  tiny.ecm_curves = 0;
  const DgsVerdict v = certify(example20(), tiny);
  EXPECT_EQ(v.kind, VerdictKind::FactorizationUnknown);
  EXPECT_EQ(v.extended_clause, Clause::Factorization);
}

TEST(ClassifySnf, Shapes) {
  auto a = big({1, 1, 2, 6});
  const SnfShape s = classify_snf(a, 4);
  EXPECT_TRUE(s.matches);
  EXPECT_EQ(s.two_exponents, (std::vector<unsigned long>{1, 1}));
  EXPECT_EQ(s.b, 3);

  auto b = big({1, 1, 1, 6});
  EXPECT_FALSE(classify_snf(b, 4).matches);  // three leading ones at n = 4
  auto c = big({1, 1, 3, 6});
  EXPECT_FALSE(classify_snf(c, 4).matches);  // 3 is not a power of two
  auto d = big({1, 3});
  EXPECT_FALSE(classify_snf(d, 2).matches);  // d_n odd
  auto e = big({1});
  EXPECT_TRUE(classify_snf(e, 1).matches);
  auto f = big({1, 1, 1, 4, 8});
  const SnfShape sf = classify_snf(f, 5);
  EXPECT_TRUE(sf.matches);
  EXPECT_EQ(sf.two_exponents, (std::vector<unsigned long>{2, 3}));
  EXPECT_EQ(sf.b, 1);
}

TEST(KernelContainment, VariantsByParity) {
  for (int n = 4; n <= 9; ++n) {
    const WalkBundle b = build_walk_bundle(random_gnp_half(n, 77 + n));
    const auto checks = kernel_containment(b);
    if (n % 2 == 0) {
      ASSERT_EQ(checks.size(), 1u);
      EXPECT_EQ(checks[0].variant, "standard");
    } else {
      ASSERT_EQ(checks.size(), 2u);
      EXPECT_EQ(checks[0].variant, "reduced");
      EXPECT_EQ(checks[1].variant, "repaired");
    }
  }
}

TEST(KernelContainment, WitnessesAreKernelVectors) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const int n = 6 + static_cast<int>(s % 6);
    const WalkBundle b = build_walk_bundle(random_gnp_half(n, s));
    for (const auto& c : kernel_containment(b)) {
      const BigIntMatrix& gram = c.variant == "reduced" ? BigIntMatrix(b.full_half_gram.rightCols(n - 1))
                                                         : b.full_half_gram;
      const BigIntMatrix& img = c.variant == "reduced" ? BigIntMatrix(b.w.rightCols(n - 1)) : b.w;
      bool all_zero = true;
      for (const auto& w : c.witnesses) {
        BigIntVector v(gram.cols());
        for (Index i = 0; i < gram.cols(); ++i) v(i) = w.kernel_vector.get(i) ? 1 : 0;
        const BigIntVector gv = gram * v, iv = img * v;
        for (Index i = 0; i < gv.size(); ++i) EXPECT_TRUE(mpz_even_p(gv(i).get_mpz_t()));
        for (Index i = 0; i < iv.size(); ++i) all_zero &= mpz_even_p(iv(i).get_mpz_t()) != 0;
      }
      EXPECT_EQ(c.holds, all_zero);
      EXPECT_EQ(static_cast<Index>(c.witnesses.size()), gram.cols() - c.half_gram_rank2);
      EXPECT_EQ(c.half_gram_rank2, oracle::rank_mod2(gram));
    }
  }
}
