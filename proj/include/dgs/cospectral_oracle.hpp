#pragma once

// Ground truth at small orders: exhaustive generalized-cospectral classes,
// reconstruction of the rational orthogonal matrix relating two cospectral
// graphs, and arithmetic of its level.

#include "dgs/arithmetic.hpp"
#include "dgs/exact_linalg.hpp"
#include "dgs/graph.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dgs {

/// Characteristic polynomials of A and of A(complement).
struct SpectrumKey {
  CharPoly adjacency;
  CharPoly complement;

  friend bool operator==(const SpectrumKey&, const SpectrumKey&) = default;
};

/// Lexicographic order on the coefficient sequences (for grouping).
bool operator<(const SpectrumKey& a, const SpectrumKey& b);

SpectrumKey spectrum_key(const Graph& g);

constexpr int kMaxOracleOrder = 7;

struct CospectralClass {
  SpectrumKey key;
  /// Pairwise non-isomorphic, in increasing canonical-code order.
  std::vector<Graph> members;
};

struct CospectralEnumeration {
  int n = 0;
  std::uint64_t labeled_graphs = 0;
  std::uint64_t isomorphism_classes = 0;
  /// Sorted by (size descending, canonical code of first member).
  std::vector<CospectralClass> classes;

  std::size_t non_singleton_count() const;
};

/// Every graph on n labeled vertices, reduced to isomorphism
/// representatives and grouped by spectrum key. The labeled space is split
/// into `shards` prefix ranges processed on separate threads; the result
/// does not depend on the shard count. Throws std::invalid_argument unless
/// 1 <= n <= kMaxOracleOrder.
CospectralEnumeration enumerate_cospectral_classes(int n, unsigned shards = 1);

struct QReconstruction {
  RationalMatrix q;
  bool orthogonal = false;        // Q^T Q = I
  bool fixes_ones = false;        // Q e = e
  bool conjugates = false;        // Q^T A(g) Q = A(h)
  bool walk_relation = false;     // Q^T W(g) = W(h)
  BigInt d_n;                     // last invariant factor of W(g)
  bool level_divides_d_n = false;

  bool verified() const { return orthogonal && fixes_ones && conjugates && walk_relation; }
};

/// Solves W(g)^T Q = W(h)^T, i.e. Q^T W(g) = W(h), exactly and checks the
/// identities a rational orthogonal conjugation must satisfy. Throws
/// SingularMatrixError if g is not controllable and std::invalid_argument
/// on order mismatch.
QReconstruction reconstruct_q(const Graph& g, const Graph& h);

struct PrimeSupport {
  std::vector<BigInt> primes;  // ascending
  /// False if some cofactor could not be split within budget; it is then
  /// listed in `primes` as is.
  bool complete = true;
};

PrimeSupport level_prime_support(const RationalMatrix& q, const FactorBudget& budget = {});
PrimeSupport prime_support(const BigInt& x, const FactorBudget& budget = {});

/// Block-diagonal switching matrix of a single-cell GM partition:
/// (2/|C|) J - I on the cell, identity elsewhere.
Matrix<Rational> gm_switching_matrix(int n, const GmPartition& p);

/// A GM-switched graph together with forensics on the conjugating matrix.
struct GmMate {
  GmPartition partition;
  Graph mate;
  bool isomorphic = false;
  bool keys_equal = false;
  /// Present when the original graph is controllable.
  std::optional<QReconstruction> q;
  PrimeSupport level_primes;
  /// Q equals the explicit switching matrix of the partition.
  bool matches_switching_matrix = false;
};

/// One entry per partition found by find_gm_partitions(g, cell_sizes).
std::vector<GmMate> gm_mates(const Graph& g, const FactorBudget& budget = {},
                             std::span<const int> cell_sizes = default_gm_cell_sizes());

// Oracle report -------------------------------------------------------------

struct OracleClassLine {
  std::size_t index = 0;
  std::vector<std::string> graph6;
  std::vector<std::string> verdicts;
};

struct OracleReport {
  int n = 0;
  std::uint64_t seed = 0;
  std::uint64_t labeled_graphs = 0;
  std::uint64_t isomorphism_classes = 0;
  std::size_t key_classes = 0;
  std::size_t non_singleton = 0;
  std::size_t certified_dgs = 0;
  std::size_t not_controllable = 0;
  std::size_t inconclusive = 0;
  std::size_t unknown = 0;
  std::size_t q_checked = 0;
  std::size_t q_failures = 0;
  /// Certified graphs lying in a non-singleton class.
  std::vector<std::string> soundness_violations;
  std::vector<OracleClassLine> non_singleton_classes;
};

/// Enumerates order n, certifies every representative and cross-checks the
/// verdicts and reconstructed Q matrices against the classes.
OracleReport run_oracle(int n, const FactorBudget& budget = {}, unsigned workers = 1, std::uint64_t seed = 0);

/// Tabular text rendering, documented in the README.
std::string format_oracle_report(const OracleReport& r);

}  // namespace dgs
