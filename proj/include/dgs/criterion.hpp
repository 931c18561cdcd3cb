#pragma once

// Arithmetic certificates that a graph is determined by its generalized
// spectrum (DGS).
//
// check_fn: det(W) = +-2^{floor(n/2)} * b with b odd and square-free.
//
// check_extended: rank_2(W) = ceil(n/2); the Smith form of W is
//   diag(1 (ceil(n/2) times), 2^{l_1}, ..., 2^{l_{t-1}}, 2^{l_t} b)
// with b odd and square-free; and every x with (W^T W1 / 2) x = 0 (mod 2)
// also satisfies W x = 0 (mod 2).
//
// Both tests are one-directional: a failed clause never implies the graph
// has a cospectral mate.

#include "dgs/arithmetic.hpp"
#include "dgs/f2_matrix.hpp"
#include "dgs/graph.hpp"
#include "dgs/walk_matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dgs {

enum class VerdictKind { NotControllable, DgsByFn, DgsByExtended, CriterionInconclusive, FactorizationUnknown };

std::string to_string(VerdictKind k);

/// Clause that stopped a test, or None when it passed.
enum class Clause {
  None,
  Controllability,  // det(W) = 0
  Valuation,        // alpha != floor(n/2)
  Rank2,            // rank_2(W) != ceil(n/2)
  SnfShape,         // some d_i (i < n) is not a power of two, or the leading ones are missing
  Containment,      // kernel containment fails
  SquareFree,       // odd part has a repeated prime
  Factorization     // square-freeness undecided within budget
};

std::string to_string(Clause c);

struct KernelWitness {
  BitVector kernel_vector;  // v with (half-Gram) v = 0 (mod 2)
  BitVector image;          // W v mod 2 (restricted to the variant's columns)
};

/// One formulation of the kernel-containment test.
///  "standard"  n even: half-Gram W^T [e, A^2e, ..., A^{2n-2}e] / 2, image W v.
///  "reduced"   n odd: half-Gram W^T [A^2e, ..., A^{2n-2}e] / 2 (n x (n-1)),
///              image [Ae, ..., A^{n-1}e] v.
///  "repaired"  n odd: half-Gram W^T [2e, A^2e, ..., A^{2n-2}e] / 2, image W v.
struct ContainmentCheck {
  std::string variant;
  Index half_gram_rank2 = 0;
  std::vector<KernelWitness> witnesses;
  bool holds = false;
};

struct SnfShape {
  Index leading_ones = 0;
  /// Exponents l_i of the entries after the leading ones (the last entry's
  /// 2-part included); empty when some entry is not of that form.
  std::vector<unsigned long> two_exponents;
  BigInt b{1};  // odd part of d_n
  bool matches = false;
};

struct Evidence {
  int n = 0;
  BigInt det_w;
  std::optional<Valuation2> valuation;
  std::optional<SquarefreeCertificate> squarefree;
  std::optional<Index> rank2_w;
  std::optional<std::vector<BigInt>> snf_diag;
  std::optional<SnfShape> snf_shape;
  /// Decisive variant first; for odd n the "repaired" variant follows.
  std::vector<ContainmentCheck> containment;
};

struct DgsVerdict {
  VerdictKind kind = VerdictKind::CriterionInconclusive;
  /// Clause that failed in check_fn (None if it passed or was not run).
  Clause fn_clause = Clause::None;
  /// Clause that failed in check_extended (None if it passed or was not run).
  Clause extended_clause = Clause::None;
  std::string detail;
  Evidence evidence;

  bool is_dgs() const { return kind == VerdictKind::DgsByFn || kind == VerdictKind::DgsByExtended; }
};

DgsVerdict check_fn(const Graph& g, const FactorBudget& budget = {});
DgsVerdict check_extended(const Graph& g, const FactorBudget& budget = {});

/// check_fn, then check_extended; evidence of both is merged.
DgsVerdict certify(const Graph& g, const FactorBudget& budget = {});

/// Kernel-containment checks for a walk bundle (exposed for tests).
std::vector<ContainmentCheck> kernel_containment(const WalkBundle& bundle);

/// Shape test against diag(1^{ceil(n/2)}, 2^{l_1}, ..., 2^{l_t} b) ignoring
/// square-freeness of b.
SnfShape classify_snf(std::span<const BigInt> diag, int n);

}  // namespace dgs
