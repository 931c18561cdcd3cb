#include "dgs/f2_matrix.hpp"

#include <bit>

namespace dgs {

bool BitVector::is_zero() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

Index BitVector::popcount() const {
  Index c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

std::string BitVector::to_string() const {
  std::string s(static_cast<std::size_t>(size_), '0');
  for (Index i = 0; i < size_; ++i)
    if (get(i)) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
  return *this;
}

F2Matrix::F2Matrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), row_bits_(static_cast<std::size_t>(rows), BitVector(cols)) {}

F2Matrix F2Matrix::from_integer(const BigIntMatrix& m) {
  F2Matrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (mpz_odd_p(m(i, j).get_mpz_t())) out.set(i, j);
  return out;
}

F2Matrix F2Matrix::identity(Index n) {
  F2Matrix out(n, n);
  for (Index i = 0; i < n; ++i) out.set(i, i);
  return out;
}

BitVector F2Matrix::apply(const BitVector& v) const {
  BitVector out(rows_);
  for (Index i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    const auto& rw = row_bits_[static_cast<std::size_t>(i)].words();
    for (std::size_t k = 0; k < rw.size(); ++k) acc ^= rw[k] & v.words()[k];
    if (std::popcount(acc) & 1) out.set(i);
  }
  return out;
}

F2Matrix F2Matrix::transpose() const {
  F2Matrix t(cols_, rows_);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j)
      if (get(i, j)) t.set(j, i);
  return t;
}

namespace {

// Reduced row echelon form; returns pivot columns.
std::vector<Index> rref(std::vector<BitVector>& rows, Index cols) {
  std::vector<Index> pivots;
  std::size_t r = 0;
  for (Index c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i].get(c)) rows[i] ^= rows[r];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<BitVector> copy_rows(const F2Matrix& m) {
  std::vector<BitVector> rows;
  rows.reserve(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rows;
}

}  // namespace

Index rank_f2(const F2Matrix& m) {
  auto rows = copy_rows(m);
  return static_cast<Index>(rref(rows, m.cols()).size());
}

std::vector<BitVector> kernel_basis_f2(const F2Matrix& m) {
  auto rows = copy_rows(m);
  const auto pivots = rref(rows, m.cols());
  std::vector<char> is_pivot(static_cast<std::size_t>(m.cols()), 0);
  for (Index c : pivots) is_pivot[static_cast<std::size_t>(c)] = 1;

  std::vector<BitVector> basis;
  for (Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    BitVector v(m.cols());
    v.set(free);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (rows[r].get(free)) v.set(pivots[r]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace dgs
