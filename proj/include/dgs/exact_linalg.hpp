#pragma once

// Exact integer linear algebra over arbitrary-precision scalars:
// fraction-free determinant and rank, Smith Normal Form (with optional
// unimodular transforms), characteristic polynomial and rational solve.

#include "dgs/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dgs {

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, Index rank) : std::runtime_error(what), rank_(rank) {}
  Index rank() const noexcept { return rank_; }

 private:
  Index rank_;
};

namespace detail {

template <typename Scalar>
inline Scalar exact_div(const Scalar& a, const Scalar& b) {
  return a / b;
}

template <>
inline BigInt exact_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// In-place Bareiss elimination. Returns (rank, sign of the row permutation).
// On return, for a full-rank square input, m(n-1, n-1) = det * sign.
template <typename Scalar>
std::pair<Index, int> bareiss_eliminate(Matrix<Scalar>& m) {
  const Index rows = m.rows(), cols = m.cols();
  Scalar prev(1);
  Index r = 0;
  int sign = 1;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index pivot = r;
    while (pivot < rows && m(pivot, c) == Scalar(0)) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      m.row(pivot).swap(m.row(r));
      sign = -sign;
    }
    for (Index i = r + 1; i < rows; ++i) {
      for (Index j = c + 1; j < cols; ++j) {
        Scalar t = m(i, j) * m(r, c) - m(i, c) * m(r, j);
        m(i, j) = exact_div<Scalar>(t, prev);
      }
      m(i, c) = Scalar(0);
    }
    prev = m(r, c);
    ++r;
  }
  return {r, sign};
}

}  // namespace detail

/// Exact determinant by fraction-free (Bareiss) elimination. Every
/// intermediate division is exact. Throws std::invalid_argument for a
/// non-square input.
template <typename Derived>
typename Derived::Scalar det_bareiss(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  if (input.rows() != input.cols()) throw std::invalid_argument("det_bareiss: matrix is not square");
  const Index n = input.rows();
  if (n == 0) return Scalar(1);
  Matrix<Scalar> m = input;
  auto [rank, sign] = detail::bareiss_eliminate(m);
  if (rank < n) return Scalar(0);
  return sign > 0 ? Scalar(m(n - 1, n - 1)) : Scalar(-m(n - 1, n - 1));
}

/// Rank over the rationals.
template <typename Derived>
Index rank_exact(const Eigen::MatrixBase<Derived>& input) {
  Matrix<typename Derived::Scalar> m = input;
  return detail::bareiss_eliminate(m).first;
}

// Smith Normal Form ----------------------------------------------------

struct SnfResult {
  /// d_1 | d_2 | ... | d_n, all positive for full-rank input.
  std::vector<BigInt> diag;
  /// Present when requested: u * diag(d) * v == input, det(u), det(v) = +-1.
  std::optional<BigIntMatrix> u;
  std::optional<BigIntMatrix> v;

  BigIntMatrix diagonal_matrix() const;
};

/// SNF of a square full-rank integer matrix. Without transforms the
/// elimination runs modulo |det(m)|, which bounds entry growth; with
/// transforms it runs over the integers using minimal-|entry| pivots.
/// Throws SingularMatrixError (carrying the rank) for rank-deficient input
/// and std::invalid_argument for non-square input.
SnfResult smith_normal_form(const BigIntMatrix& m, bool with_transforms = false);

// Characteristic polynomial ----------------------------------------------

/// Coefficients of det(xI - M) = x^n + c_1 x^{n-1} + ... + c_n, stored as
/// coeffs[i] = c_i with coeffs[0] = 1.
struct CharPoly {
  std::vector<BigInt> coeffs;

  Index degree() const { return static_cast<Index>(coeffs.size()) - 1; }
  const BigInt& operator[](std::size_t i) const { return coeffs[i]; }
  /// Value at an integer point.
  BigInt evaluate(const BigInt& x) const;
  std::string to_string(char var = 'x') const;

  friend bool operator==(const CharPoly&, const CharPoly&) = default;
};

/// Exact characteristic polynomial. Computed by Hessenberg reduction
/// modulo enough 62-bit primes to exceed twice a Hadamard-type bound on
/// every coefficient, then Chinese remaindering.
CharPoly char_poly(const BigIntMatrix& m);

template <typename Derived>
CharPoly char_poly(const Eigen::MatrixBase<Derived>& m) {
  return char_poly(to_bigint(m));
}

// Rational solve -------------------------------------------------------

/// Rational matrix in lowest terms with its level: the least positive
/// integer l such that l * entries is integral.
struct RationalMatrix {
  Matrix<Rational> entries;
  BigInt level;

  static RationalMatrix from(Matrix<Rational> entries);
  /// level * entries, as an integer matrix.
  BigIntMatrix scaled() const;
  bool is_integral() const { return level == 1; }
};

/// Solves a * X = b exactly. Throws SingularMatrixError for singular a.
RationalMatrix solve_rational(const BigIntMatrix& a, const BigIntMatrix& b);

}  // namespace dgs
