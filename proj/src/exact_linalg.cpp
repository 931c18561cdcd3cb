#include "dgs/exact_linalg.hpp"

#include "modular.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace dgs {

BigInt from_decimal(const std::string& s) {
  BigInt x;
  if (s.empty() || x.set_str(s, 10) != 0) throw std::invalid_argument("not a decimal integer: '" + s + "'");
  return x;
}

// Smith Normal Form ----------------------------------------------------

BigIntMatrix SnfResult::diagonal_matrix() const {
  const auto n = static_cast<Index>(diag.size());
  BigIntMatrix s = BigIntMatrix::Constant(n, n, BigInt(0));
  for (Index i = 0; i < n; ++i) s(i, i) = diag[i];
  return s;
}

namespace {

// Minimal-pivot elimination. With a modulus D (|det| of the input), all
// entries are kept as symmetric residues mod D; the column lattice of the
// input contains D*Z^n, so this only discards multiples of lattice vectors.
class SnfEliminator {
 public:
  SnfEliminator(BigIntMatrix m, std::optional<BigInt> modulus, bool track)
      : m_(std::move(m)), modulus_(std::move(modulus)), track_(track) {
    const Index n = m_.rows();
    if (track_) {
      u_ = BigIntMatrix::Identity(n, n);
      v_ = BigIntMatrix::Identity(n, n);
    }
    if (modulus_)
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) reduce(m_(i, j));
  }

  // Diagonalises; when `divisibility` is set also enforces d_t | rest.
  void run(bool divisibility) {
    const Index n = m_.rows();
    for (Index t = 0; t < n; ++t) {
      for (;;) {
        Index pi = -1, pj = -1;
        for (Index i = t; i < n; ++i)
          for (Index j = t; j < n; ++j)
            if (sgn(m_(i, j)) != 0 && (pi < 0 || mpz_cmpabs(m_(i, j).get_mpz_t(), m_(pi, pj).get_mpz_t()) < 0)) pi = i, pj = j;
        if (pi < 0) return;  // remaining block is zero
        swap_rows(t, pi);
        swap_cols(t, pj);

        bool clean = true;
        for (Index i = t + 1; i < n; ++i) {
          if (sgn(m_(i, t)) == 0) continue;
          BigInt q;
          mpz_tdiv_q(q.get_mpz_t(), m_(i, t).get_mpz_t(), m_(t, t).get_mpz_t());
          add_row_multiple(i, t, -q);
          if (sgn(m_(i, t)) != 0) clean = false;
        }
        for (Index j = t + 1; j < n; ++j) {
          if (sgn(m_(t, j)) == 0) continue;
          BigInt q;
          mpz_tdiv_q(q.get_mpz_t(), m_(t, j).get_mpz_t(), m_(t, t).get_mpz_t());
          add_col_multiple(j, t, -q);
          if (sgn(m_(t, j)) != 0) clean = false;
        }
        if (!clean) continue;
        if (!divisibility) break;

        Index bad = -1;
        for (Index i = t + 1; i < n && bad < 0; ++i)
          for (Index j = t + 1; j < n; ++j)
            if (!mpz_divisible_p(m_(i, j).get_mpz_t(), m_(t, t).get_mpz_t())) {
              bad = i;
              break;
            }
        if (bad < 0) break;
        add_row_multiple(t, bad, BigInt(1));
      }
      if (sgn(m_(t, t)) < 0) negate_row(t);
    }
  }

  const BigIntMatrix& matrix() const { return m_; }
  const BigIntMatrix& u() const { return u_; }
  const BigIntMatrix& v() const { return v_; }

 private:
  void reduce(BigInt& x) const {
    if (!modulus_) return;
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus_->get_mpz_t());
    if (2 * x > *modulus_) x -= *modulus_;
  }

  void swap_rows(Index a, Index b) {
    if (a == b) return;
    m_.row(a).swap(m_.row(b));
    if (track_) u_.col(a).swap(u_.col(b));
  }
  void swap_cols(Index a, Index b) {
    if (a == b) return;
    m_.col(a).swap(m_.col(b));
    if (track_) v_.row(a).swap(v_.row(b));
  }
  // row_i += k * row_j
  void add_row_multiple(Index i, Index j, const BigInt& k) {
    for (Index c = 0; c < m_.cols(); ++c) {
      m_(i, c) += k * m_(j, c);
      reduce(m_(i, c));
    }
    if (track_)
      for (Index r = 0; r < u_.rows(); ++r) u_(r, j) -= k * u_(r, i);
  }
  // col_i += k * col_j
  void add_col_multiple(Index i, Index j, const BigInt& k) {
    for (Index r = 0; r < m_.rows(); ++r) {
      m_(r, i) += k * m_(r, j);
      reduce(m_(r, i));
    }
    if (track_)
      for (Index c = 0; c < v_.cols(); ++c) v_(j, c) -= k * v_(i, c);
  }
  void negate_row(Index i) {
    for (Index c = 0; c < m_.cols(); ++c) m_(i, c) = -m_(i, c);
    if (track_)
      for (Index r = 0; r < u_.rows(); ++r) u_(r, i) = -u_(r, i);
  }

  BigIntMatrix m_;
  std::optional<BigInt> modulus_;
  bool track_;
  BigIntMatrix u_, v_;
};

}  // namespace

SnfResult smith_normal_form(const BigIntMatrix& m, bool with_transforms) {
  if (m.rows() != m.cols()) throw std::invalid_argument("smith_normal_form: matrix is not square");
  const Index n = m.rows();
  SnfResult result;
  if (n == 0) return result;

  const BigInt det = det_bareiss(m);
  if (det == 0) {
    const Index r = rank_exact(m);
    throw SingularMatrixError("smith_normal_form: matrix has rank " + std::to_string(r) + " < " +
                                  std::to_string(n),
                              r);
  }

  if (with_transforms) {
    SnfEliminator e(m, std::nullopt, true);
    e.run(true);
    for (Index i = 0; i < n; ++i) result.diag.push_back(e.matrix()(i, i));
    result.u = e.u();
    result.v = e.v();
    return result;
  }

  const BigInt modulus = abs(det);
  SnfEliminator e(m, modulus, false);
  e.run(false);
  std::vector<BigInt> d(n);
  for (Index i = 0; i < n; ++i) mpz_gcd(d[i].get_mpz_t(), e.matrix()(i, i).get_mpz_t(), modulus.get_mpz_t());
  // diag(x, y) ~ diag(gcd, lcm); repeat until the chain divides.
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      if (mpz_divisible_p(d[j].get_mpz_t(), d[i].get_mpz_t())) continue;
      BigInt g, l;
      mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      d[i] = g;
      d[j] = l;
    }
  BigInt product = 1;
  for (const auto& x : d) product *= x;
  if (product != modulus) throw std::logic_error("smith_normal_form: invariant factors do not multiply to |det|");
  result.diag = std::move(d);
  return result;
}

// Characteristic polynomial ----------------------------------------------

BigInt CharPoly::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (const auto& c : coeffs) acc = acc * x + c;
  return acc;
}

std::string CharPoly::to_string(char var) const {
  std::ostringstream os;
  const Index n = degree();
  bool first = true;
  for (Index i = 0; i <= n; ++i) {
    const BigInt& c = coeffs[i];
    if (c == 0) continue;
    const Index power = n - i;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || power == 0) os << mag;
    if (power > 0) os << var;
    if (power > 1) os << '^' << power;
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

namespace {

// det(xI - H) mod p via Hessenberg reduction; result low-to-high, monic.
std::vector<std::uint64_t> char_poly_mod(const BigIntMatrix& m, std::uint64_t p) {
  using detail::addmod;
  using detail::mulmod;
  using detail::submod;
  const Index n = m.rows();
  std::vector<std::uint64_t> h(static_cast<std::size_t>(n * n));
  auto at = [&](Index i, Index j) -> std::uint64_t& { return h[static_cast<std::size_t>(i * n + j)]; };
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) at(i, j) = mpz_fdiv_ui(m(i, j).get_mpz_t(), p);

  for (Index j = 0; j + 2 < n; ++j) {
    Index piv = j + 1;
    while (piv < n && at(piv, j) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (Index c = 0; c < n; ++c) std::swap(at(piv, c), at(j + 1, c));
      for (Index r = 0; r < n; ++r) std::swap(at(r, piv), at(r, j + 1));
    }
    const std::uint64_t inv = detail::invmod(at(j + 1, j), p);
    for (Index r = j + 2; r < n; ++r) {
      const std::uint64_t u = mulmod(at(r, j), inv, p);
      if (u == 0) continue;
      for (Index c = 0; c < n; ++c) at(r, c) = submod(at(r, c), mulmod(u, at(j + 1, c), p), p);
      for (Index rr = 0; rr < n; ++rr) at(rr, j + 1) = addmod(at(rr, j + 1), mulmod(u, at(rr, r), p), p);
    }
  }

  // p_{k+1} = (x - h_kk) p_k - sum_{i<k} h_ik (prod_{m=i+1}^{k} h_{m,m-1}) p_i
  std::vector<std::vector<std::uint64_t>> polys;
  polys.push_back({1});
  for (Index k = 0; k < n; ++k) {
    const auto& pk = polys.back();
    std::vector<std::uint64_t> next(pk.size() + 1, 0);
    for (std::size_t d = 0; d < pk.size(); ++d) {
      next[d + 1] = addmod(next[d + 1], pk[d], p);
      next[d] = submod(next[d], mulmod(at(k, k), pk[d], p), p);
    }
    std::uint64_t prod = 1;
    for (Index i = k - 1; i >= 0; --i) {
      prod = mulmod(prod, at(i + 1, i), p);
      if (prod == 0) break;
      const std::uint64_t coef = mulmod(at(i, k), prod, p);
      if (coef == 0) continue;
      const auto& pi = polys[static_cast<std::size_t>(i)];
      for (std::size_t d = 0; d < pi.size(); ++d) next[d] = submod(next[d], mulmod(coef, pi[d], p), p);
    }
    polys.push_back(std::move(next));
  }
  return polys.back();
}

// Upper bound on log2 |c_k| over all k: |c_k| <= C(n,k) * (product of the
// k largest row norms), each principal minor bounded by Hadamard.
double coefficient_log2_bound(const BigIntMatrix& m) {
  const Index n = m.rows();
  std::vector<double> row_log;
  for (Index i = 0; i < n; ++i) {
    BigInt s = 0;
    for (Index j = 0; j < n; ++j) s += m(i, j) * m(i, j);
    row_log.push_back(s == 0 ? 0.0 : static_cast<double>(mpz_sizeinbase(s.get_mpz_t(), 2)) / 2.0);
  }
  std::sort(row_log.rbegin(), row_log.rend());
  double best = 0, prefix = 0, log_binom = 0;
  for (Index k = 1; k <= n; ++k) {
    prefix += std::max(row_log[k - 1], 0.0);
    log_binom += std::log2(static_cast<double>(n - k + 1)) - std::log2(static_cast<double>(k));
    best = std::max(best, prefix + log_binom);
  }
  return best;
}

}  // namespace

CharPoly char_poly(const BigIntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("char_poly: matrix is not square");
  const Index n = m.rows();
  const double bits = coefficient_log2_bound(m) + 2.0;
  const auto count = static_cast<std::size_t>(std::ceil(bits / 61.0)) + 1;
  const auto primes = detail::word_primes(count);

  std::vector<BigInt> value(static_cast<std::size_t>(n + 1), BigInt(0));
  BigInt modulus = 1;
  for (auto p : primes) {
    const auto residues = char_poly_mod(m, p);
    const BigInt bp(static_cast<unsigned long>(p));
    BigInt inv;
    BigInt mmod = modulus % bp;
    mpz_invert(inv.get_mpz_t(), mmod.get_mpz_t(), bp.get_mpz_t());
    for (Index d = 0; d <= n; ++d) {
      BigInt& x = value[static_cast<std::size_t>(d)];
      BigInt r = BigInt(static_cast<unsigned long>(residues[static_cast<std::size_t>(d)])) - x;
      BigInt t = r * inv;
      mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), bp.get_mpz_t());
      x += modulus * t;
    }
    modulus *= bp;
  }
  CharPoly cp;
  cp.coeffs.resize(static_cast<std::size_t>(n + 1));
  for (Index d = 0; d <= n; ++d) {
    BigInt x = value[static_cast<std::size_t>(d)];
    if (2 * x > modulus) x -= modulus;
    cp.coeffs[static_cast<std::size_t>(n - d)] = x;  // coefficient of x^d is c_{n-d}
  }
  return cp;
}

// Rational solve -------------------------------------------------------

RationalMatrix RationalMatrix::from(Matrix<Rational> entries) {
  RationalMatrix r{std::move(entries), BigInt(1)};
  for (Index i = 0; i < r.entries.rows(); ++i)
    for (Index j = 0; j < r.entries.cols(); ++j) {
      r.entries(i, j).canonicalize();
      mpz_lcm(r.level.get_mpz_t(), r.level.get_mpz_t(), r.entries(i, j).get_den_mpz_t());
    }
  return r;
}

BigIntMatrix RationalMatrix::scaled() const {
  BigIntMatrix out(entries.rows(), entries.cols());
  for (Index i = 0; i < entries.rows(); ++i)
    for (Index j = 0; j < entries.cols(); ++j) {
      const Rational x = entries(i, j) * Rational(level);
      out(i, j) = x.get_num();
    }
  return out;
}

RationalMatrix solve_rational(const BigIntMatrix& a, const BigIntMatrix& b) {
  if (a.rows() != a.cols()) throw std::invalid_argument("solve_rational: coefficient matrix is not square");
  if (b.rows() != a.rows()) throw std::invalid_argument("solve_rational: right-hand side has wrong row count");
  const Index n = a.rows(), k = b.cols();
  Matrix<Rational> aug(n, n + k);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (Index j = 0; j < k; ++j) aug(i, n + j) = b(i, j);
  }
  for (Index c = 0; c < n; ++c) {
    Index piv = c;
    while (piv < n && sgn(aug(piv, c)) == 0) ++piv;
    if (piv == n) {
      const Index r = rank_exact(a);
      throw SingularMatrixError("solve_rational: matrix is singular (rank " + std::to_string(r) + ")", r);
    }
    if (piv != c) aug.row(piv).swap(aug.row(c));
    const Rational inv = 1 / aug(c, c);
    for (Index j = c; j < n + k; ++j) aug(c, j) *= inv;
    for (Index i = 0; i < n; ++i) {
      if (i == c || sgn(aug(i, c)) == 0) continue;
      const Rational f = aug(i, c);
      for (Index j = c; j < n + k; ++j) aug(i, j) -= f * aug(c, j);
    }
  }
  return RationalMatrix::from(aug.rightCols(k));
}

}  // namespace dgs
