#pragma once

// Arbitrary-precision scalars and the dense matrix aliases built on them.
//
// Every integer quantity that can grow with n (walk-matrix entries,
// determinants, elementary divisors, characteristic polynomial
// coefficients) is a BigInt. There is no fixed-width path for these.

#include <gmpxx.h>

#include <Eigen/Dense>

#include <string>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Nested = mpz_class;
  using Literal = mpz_class;
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 300,
    MulCost = 300
  };
};

}  // namespace Eigen

namespace dgs {

using BigInt = mpz_class;
using Rational = mpq_class;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using BigIntMatrix = Matrix<BigInt>;
using BigIntVector = Vector<BigInt>;
using Index = Eigen::Index;

inline std::string to_decimal(const BigInt& x) { return x.get_str(10); }

// Parses an optionally signed decimal string; throws std::invalid_argument.
BigInt from_decimal(const std::string& s);

template <typename Derived>
BigIntMatrix to_bigint(const Eigen::MatrixBase<Derived>& m) {
  BigIntMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = static_cast<long>(m(i, j));
  return out;
}

}  // namespace dgs
