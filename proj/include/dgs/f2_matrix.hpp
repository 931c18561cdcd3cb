#pragma once

// Dense matrices over GF(2), one bit per entry, rows packed into 64-bit
// words. Padding bits beyond `cols` are always zero.

#include "dgs/scalar.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dgs {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(Index size) : size_(size), words_(word_count(size), 0) {}

  Index size() const noexcept { return size_; }
  bool get(Index i) const { return (words_[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1u; }
  void set(Index i, bool value = true) {
    const auto mask = std::uint64_t{1} << (i % 64);
    auto& w = words_[static_cast<std::size_t>(i / 64)];
    w = value ? (w | mask) : (w & ~mask);
  }
  bool is_zero() const;
  Index popcount() const;
  std::string to_string() const;  // "0110..."

  BitVector& operator^=(const BitVector& other);
  friend bool operator==(const BitVector&, const BitVector&) = default;

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  std::vector<std::uint64_t>& words() noexcept { return words_; }

  static std::size_t word_count(Index bits) { return static_cast<std::size_t>((bits + 63) / 64); }

 private:
  Index size_ = 0;
  std::vector<std::uint64_t> words_;
};

class F2Matrix {
 public:
  F2Matrix(Index rows, Index cols);

  /// Entrywise reduction mod 2 (sign-insensitive).
  static F2Matrix from_integer(const BigIntMatrix& m);
  static F2Matrix identity(Index n);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  bool get(Index i, Index j) const { return row_bits_[static_cast<std::size_t>(i)].get(j); }
  void set(Index i, Index j, bool value = true) { row_bits_[static_cast<std::size_t>(i)].set(j, value); }
  const BitVector& row(Index i) const { return row_bits_[static_cast<std::size_t>(i)]; }

  /// this * v over GF(2).
  BitVector apply(const BitVector& v) const;
  F2Matrix transpose() const;

  friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

 private:
  Index rows_, cols_;
  std::vector<BitVector> row_bits_;
};

Index rank_f2(const F2Matrix& m);

/// Basis of {x : m x = 0} over GF(2), one vector per free column of the
/// reduced row echelon form. rank + basis size = cols.
std::vector<BitVector> kernel_basis_f2(const F2Matrix& m);

}  // namespace dgs
