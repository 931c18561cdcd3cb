#include "dgs/arithmetic.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace dgs;

namespace {

BigInt reassemble(const SquarefreeCertificate& c) {
  BigInt x = c.residual;
  for (const auto& f : c.found_factors) {
    BigInt p;
    mpz_pow_ui(p.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    x *= p;
  }
  return x;
}

}  // namespace

TEST(Squarefree, SmallExamples) {
  const auto c45 = certify_squarefree(45);
  EXPECT_EQ(c45.status, SquarefreeStatus::NotSquareFree);
  ASSERT_TRUE(c45.repeated_prime);
  EXPECT_EQ(*c45.repeated_prime, 3);
  EXPECT_EQ(reassemble(c45), 45);

  const auto c105 = certify_squarefree(105);
  EXPECT_EQ(c105.status, SquarefreeStatus::SquareFree);
  EXPECT_EQ(reassemble(c105), 105);

  EXPECT_EQ(certify_squarefree(1).status, SquarefreeStatus::SquareFree);
  EXPECT_EQ(certify_squarefree(1).residual_class, ResidualClass::One);
}

TEST(Squarefree, RejectsBadInput) {
  EXPECT_THROW(certify_squarefree(0), std::invalid_argument);
  EXPECT_THROW(certify_squarefree(-3), std::invalid_argument);
  EXPECT_THROW(certify_squarefree(10), std::invalid_argument);
}

TEST(Squarefree, ExampleOddPart) {
  const BigInt big("231734663160530708115251000501057");
  const BigInt b = BigInt(7) * 11 * 383 * 210857 * big;
  const auto c = certify_squarefree(b);
  EXPECT_EQ(c.status, SquarefreeStatus::SquareFree);
  std::vector<BigInt> primes;
  for (const auto& f : c.found_factors) {
    EXPECT_EQ(f.exponent, 1u);
    primes.push_back(f.prime);
  }
  EXPECT_EQ(primes, (std::vector<BigInt>{7, 11, 383, 210857}));
  EXPECT_EQ(c.residual, big);
  EXPECT_EQ(c.residual_class, ResidualClass::ProbablePrime);
  EXPECT_LE(c.primality_error_log2, -128);
}

TEST(Squarefree, AgreesWithTrialDivisionUpToOneMillion) {
  FactorBudget small;
  small.trial_bound = 1000;  // forces the rho path for most composites
  for (unsigned long b = 1; b <= 1'000'000; b += 2) {
    bool expected = true;
    for (const auto& [p, e] : oracle::factor_trial(b)) expected &= e == 1;
    const auto c = certify_squarefree(BigInt(b), b % 7 == 1 ? small : FactorBudget{});
    ASSERT_NE(c.status, SquarefreeStatus::Unknown) << b;
    ASSERT_EQ(c.status == SquarefreeStatus::SquareFree, expected) << b;
    if (!expected) {
      const BigInt p = *c.repeated_prime;
      ASSERT_TRUE(mpz_divisible_p(BigInt(b).get_mpz_t(), BigInt(p * p).get_mpz_t())) << b;
    }
    ASSERT_EQ(reassemble(c), b) << b;
  }
}

TEST(Squarefree, LargeSquareFactorFoundByRho) {
  const BigInt p("1000000007"), q("998244353"), r("1000000000039");
  const auto c = certify_squarefree(p * p * q * r);
  EXPECT_EQ(c.status, SquarefreeStatus::NotSquareFree);
  EXPECT_EQ(*c.repeated_prime, p);
  EXPECT_EQ(reassemble(c), p * p * q * r);

  const auto ok = certify_squarefree(p * q * r);
  EXPECT_EQ(ok.status, SquarefreeStatus::SquareFree);
  EXPECT_EQ(reassemble(ok), p * q * r);
}

TEST(Squarefree, PerfectPowerResidual) {
  const BigInt p("1000000000039");
  const auto c = certify_squarefree(p * p * p);
  EXPECT_EQ(c.status, SquarefreeStatus::NotSquareFree);
  EXPECT_EQ(*c.repeated_prime, p);
  EXPECT_TRUE(c.repeated_prime_is_prime);
}

TEST(Squarefree, BudgetExhaustionIsUnknown) {
  // Product of two 40-digit primes: far beyond a tiny rho and ECM budget.
  BigInt p, q;
  mpz_nextprime(p.get_mpz_t(), BigInt("1000000000000000000000000000000000000000").get_mpz_t());
  mpz_nextprime(q.get_mpz_t(), p.get_mpz_t());
  FactorBudget tiny;
  tiny.rho_iterations = 1000;
  tiny.ecm_curves = 3;
  const auto c = certify_squarefree(p * q, tiny);
  EXPECT_EQ(c.status, SquarefreeStatus::Unknown);
  EXPECT_EQ(c.residual_class, ResidualClass::Composite);
  EXPECT_TRUE(c.effort.budget_exhausted);
  EXPECT_EQ(reassemble(c), p * q);
}

TEST(Squarefree, Deterministic) {
  const BigInt x = BigInt("1000000007") * BigInt("998244353") * BigInt("19260817") * 3;
  const auto a = certify_squarefree(x), b = certify_squarefree(x);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.effort.rho_iterations, b.effort.rho_iterations);
  EXPECT_EQ(a.found_factors.size(), b.found_factors.size());
}

TEST(PerfectPower, Examples) {
  auto a = is_perfect_power(49);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->first, 7);
  EXPECT_EQ(a->second, 2u);
  EXPECT_FALSE(is_perfect_power(10));
  auto c = is_perfect_power(8192);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->first, 2);
  EXPECT_EQ(c->second, 13u);
  auto d = is_perfect_power(BigInt(6) * 6 * 6 * 6 * 6 * 6);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->first, 6);
  EXPECT_EQ(d->second, 6u);
}

TEST(Primality, SmallNumbersExact) {
  for (unsigned long n = 0; n < 20000; ++n) {
    bool prime = n >= 2;
    for (unsigned long d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
    EXPECT_EQ(is_probable_prime(BigInt(n)), prime) << n;
  }
  EXPECT_FALSE(is_probable_prime(BigInt("3215031751")));  // strong pseudoprime to 2, 3, 5, 7
  EXPECT_TRUE(is_probable_prime(BigInt("18446744073709551557")));
  EXPECT_TRUE(is_probable_prime(BigInt("231734663160530708115251000501057")));
}

TEST(PollardBrent, FindsFactor) {
  const BigInt n = BigInt("1000000007") * BigInt("998244353");
  auto f = pollard_brent(n, 1, 10'000'000);
  ASSERT_TRUE(f);
  EXPECT_TRUE(mpz_divisible_p(n.get_mpz_t(), f->get_mpz_t()));
  EXPECT_NE(*f, 1);
  EXPECT_NE(*f, n);
}

TEST(Ecm, FindsMediumFactor) {
  BigInt p, q;
  mpz_nextprime(p.get_mpz_t(), BigInt("100000000000000").get_mpz_t());
  mpz_nextprime(q.get_mpz_t(), BigInt("100000000000000000000000000000").get_mpz_t());
  const BigInt n = p * q;
  unsigned used = 0;
  const auto f = ecm_factor(n, 3, 200, 11000, &used);
  ASSERT_TRUE(f);
  EXPECT_TRUE(*f == p || *f == q);
  EXPECT_GE(used, 1u);
  const auto again = ecm_factor(n, 3, 200, 11000);
  EXPECT_EQ(again, f);
}

TEST(Ecm, CertifierFallsBackToCurves) {
  // Both factors far beyond a small rho slice; the curves split them.
  BigInt p, q, r;
  mpz_nextprime(p.get_mpz_t(), BigInt("1000000000000000").get_mpz_t());
  mpz_nextprime(q.get_mpz_t(), BigInt("10000000000000000000").get_mpz_t());
  mpz_nextprime(r.get_mpz_t(), BigInt("1000000000000000000000000000000").get_mpz_t());
  FactorBudget b;
  b.rho_iterations = 2000;
  const auto c = certify_squarefree(p * q * r, b);
  EXPECT_EQ(c.status, SquarefreeStatus::SquareFree);
  EXPECT_GT(c.effort.ecm_curves, 0u);
  EXPECT_EQ(reassemble(c), p * q * r);
  const auto sq = certify_squarefree(p * q * q * r, b);
  EXPECT_EQ(sq.status, SquarefreeStatus::NotSquareFree);
  EXPECT_EQ(*sq.repeated_prime, q);
}

TEST(Ecm, NoCurvesMeansRhoOnly) {
  BigInt p, q;
  mpz_nextprime(p.get_mpz_t(), BigInt("1000000000000000").get_mpz_t());
  mpz_nextprime(q.get_mpz_t(), BigInt("1000000000000000000000000000000").get_mpz_t());
  FactorBudget b;
  b.rho_iterations = 2000;
  b.ecm_curves = 0;
  const auto c = certify_squarefree(p * q, b);
  EXPECT_EQ(c.status, SquarefreeStatus::Unknown);
  EXPECT_EQ(c.effort.ecm_curves, 0u);
  EXPECT_THROW(ecm_factor(p * q, 1, 1, 10), std::invalid_argument);
}
