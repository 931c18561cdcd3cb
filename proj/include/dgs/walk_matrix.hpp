#pragma once

// Walk matrix W = [e, Ae, ..., A^{n-1}e] and its even-power companions.

#include "dgs/graph.hpp"
#include "dgs/scalar.hpp"

#include <vector>

namespace dgs {

/// Walk matrix of g and the derived matrices used by the certification
/// tests. With k = ceil(n/2):
///
///   w          [e, Ae, ..., A^{n-1}e]
///   w1         [e, A^2 e, ..., A^{2n-2} e]; for odd n the first column is 2e
///   wtil       n even: [e, ..., A^{k-1}e];      n odd: [Ae, ..., A^{k-1}e]
///   wtil1      n even: [e, ..., A^{2k-2}e];     n odd: [A^2 e, ..., A^{2k-2}e]
///   half_gram  W^T * wtil1 / 2
///   full_half_gram  W^T * w1 / 2
///
/// For odd n, e^T e = n is odd, so W^T [e, A^2e, ...] is not even in entry
/// (1,1); doubling the e column keeps W^T w1 / 2 integral.
struct WalkBundle {
  int n = 0;
  int k = 0;
  BigIntMatrix w;
  BigIntMatrix w1;
  BigIntMatrix wtil;
  BigIntMatrix wtil1;
  BigIntMatrix half_gram;
  BigIntMatrix full_half_gram;
  /// A^j e for j = 0 .. 2n-2.
  std::vector<BigIntVector> powers;
};

/// Columns are produced by repeated sparse mat-vec products, never by
/// forming matrix powers. Throws std::logic_error if a product that must
/// be even is not (this would indicate a construction bug).
WalkBundle build_walk_bundle(const Graph& g);

/// W alone (columns A^j e, j < n).
BigIntMatrix walk_matrix(const Graph& g);

/// det(W); zero iff g is not controllable.
BigInt det_walk(const Graph& g);

/// x = sign * 2^alpha * odd_part with odd_part odd and positive.
struct Valuation2 {
  unsigned long alpha = 0;
  BigInt odd_part;
  int sign = 1;
};

/// Throws std::domain_error for x = 0.
Valuation2 valuation2(const BigInt& x);

/// Exactly halves every entry; throws std::logic_error on an odd entry.
BigIntMatrix halve_exact(const BigIntMatrix& m, const char* what);

}  // namespace dgs
