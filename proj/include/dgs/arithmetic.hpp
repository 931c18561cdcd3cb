#pragma once

// Square-freeness certification of odd big integers under an explicit
// effort budget. The answer is three-valued: when factoring runs out of
// budget before every cofactor is resolved the certificate says Unknown
// and carries the unresolved residual.

#include "dgs/scalar.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dgs {

struct FactorBudget {
  /// Trial division by every prime up to this bound.
  unsigned long trial_bound = 1'000'000;
  /// Total Pollard-Brent iterations across all cofactors.
  std::uint64_t rho_iterations = 4'000'000;
  /// Total elliptic-curve trials across all cofactors. Zero disables ECM
  /// and leaves the whole rho budget to a single cofactor.
  unsigned ecm_curves = 200;
  /// Stage-1 smoothness bound; stage 2 runs to 100 * ecm_b1.
  unsigned long ecm_b1 = 11'000;
  /// Strong probable-prime rounds; error probability <= 4^-rounds.
  int primality_rounds = 64;
};

enum class SquarefreeStatus { SquareFree, NotSquareFree, Unknown };
enum class ResidualClass { One, ProbablePrime, Composite, Unknown };

std::string to_string(SquarefreeStatus s);
std::string to_string(ResidualClass c);

struct FoundFactor {
  BigInt prime;
  unsigned long exponent = 1;
  /// False when primality rests on the probabilistic test only.
  bool proven_prime = true;
};

struct FactorEffort {
  std::uint64_t trial_divisions = 0;
  std::uint64_t rho_iterations = 0;
  std::uint64_t rho_restarts = 0;
  std::uint64_t ecm_curves = 0;
  std::uint64_t primality_rounds = 0;
  bool budget_exhausted = false;
};

struct SquarefreeCertificate {
  BigInt input;
  SquarefreeStatus status = SquarefreeStatus::Unknown;
  std::vector<FoundFactor> found_factors;
  BigInt residual{1};
  ResidualClass residual_class = ResidualClass::One;
  /// Set iff status == NotSquareFree; its square divides the input.
  std::optional<BigInt> repeated_prime;
  /// False only if the repeated factor could not be split down to a prime
  /// within budget.
  bool repeated_prime_is_prime = true;
  FactorEffort effort;
  FactorBudget budget;
  /// log2 of the bound on the probability that a ProbablePrime label is wrong.
  int primality_error_log2 = -128;
};

/// Pipeline: trial division up to the bound, perfect-power detection,
/// strong probable-prime tests, then Pollard-Brent and ECM splitting of
/// composite cofactors within budget. Throws std::invalid_argument unless b is odd
/// and positive.
SquarefreeCertificate certify_squarefree(const BigInt& b, const FactorBudget& budget = {});

/// Maximal-exponent representation x = base^exponent with exponent >= 2,
/// if one exists. Requires x >= 2.
std::optional<std::pair<BigInt, unsigned long>> is_perfect_power(const BigInt& x);

/// Strong probable-prime test with `rounds` pseudo-random bases derived
/// deterministically from n. Exact (deterministic bases) below 2^64.
bool is_probable_prime(const BigInt& n, int rounds = 64);

/// One nontrivial factor of composite odd n, or nullopt if `max_iterations`
/// Brent steps do not find one. Deterministic for fixed (n, seed).
std::optional<BigInt> pollard_brent(const BigInt& n, std::uint64_t seed, std::uint64_t max_iterations,
                                    std::uint64_t* iterations_used = nullptr);

/// One nontrivial factor of odd composite n found by the elliptic curve
/// method (Montgomery curves, Suyama parametrisation, two stages), or
/// nullopt after `curves` curves. Deterministic for fixed (n, seed).
std::optional<BigInt> ecm_factor(const BigInt& n, std::uint64_t seed, unsigned curves, unsigned long b1,
                                 unsigned* curves_used = nullptr);

/// Odd primes <= bound, ascending.
std::vector<unsigned long> odd_primes_up_to(unsigned long bound);

}  // namespace dgs
