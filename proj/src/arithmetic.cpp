#include "dgs/arithmetic.hpp"

#include "dgs/random.hpp"
#include "modular.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace dgs {

std::string to_string(SquarefreeStatus s) {
  switch (s) {
    case SquarefreeStatus::SquareFree: return "SquareFree";
    case SquarefreeStatus::NotSquareFree: return "NotSquareFree";
    case SquarefreeStatus::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(ResidualClass c) {
  switch (c) {
    case ResidualClass::One: return "One";
    case ResidualClass::ProbablePrime: return "ProbablePrime";
    case ResidualClass::Composite: return "Composite";
    case ResidualClass::Unknown: return "Unknown";
  }
  return "?";
}

std::vector<unsigned long> odd_primes_up_to(unsigned long bound) {
  static std::mutex mu;
  static std::vector<unsigned long> cache;
  static unsigned long cached_bound = 0;
  std::lock_guard lock(mu);
  if (bound > cached_bound) {
    std::vector<char> composite(bound + 1, 0);
    cache.clear();
    for (unsigned long i = 3; i <= bound; i += 2) {
      if (composite[i]) continue;
      cache.push_back(i);
      for (unsigned long j = i * i; j <= bound; j += 2 * i) composite[j] = 1;
    }
    cached_bound = bound;
  }
  auto end = std::upper_bound(cache.begin(), cache.end(), bound);
  return {cache.begin(), end};
}

namespace {

std::uint64_t low_word(const BigInt& n) { return mpz_getlimbn(n.get_mpz_t(), 0); }

bool fits_u64(const BigInt& n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64 && sgn(n) >= 0; }

bool strong_probable_prime(const BigInt& n, const BigInt& d, unsigned long s, const BigInt& base) {
  const BigInt nm1 = n - 1;
  BigInt x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == nm1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

bool probable_prime_counted(const BigInt& n, int rounds, std::uint64_t& used) {
  if (n < 2) return false;
  if (fits_u64(n)) {
    ++used;
    return detail::is_prime_u64(low_word(n));
  }
  if (mpz_even_p(n.get_mpz_t())) return false;
  BigInt d = n - 1;
  const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  SplitMix64Stream stream(low_word(n) ^ mpz_sizeinbase(n.get_mpz_t(), 2));
  const BigInt span = n - 3;  // bases drawn from [2, n-2]
  for (int r = 0; r < rounds; ++r) {
    BigInt base = 0;
    for (int w = 0; w < 4; ++w) {
      base <<= 64;
      base += BigInt(static_cast<unsigned long>(stream()));
    }
    base = base % span + 2;
    ++used;
    if (!strong_probable_prime(n, d, s, base)) return false;
  }
  return true;
}

// First prime k such that x is a perfect k-th power, with its root.
std::optional<std::pair<BigInt, unsigned long>> prime_power_root(const BigInt& x) {
  const auto bits = mpz_sizeinbase(x.get_mpz_t(), 2);
  for (unsigned long k = 2; k <= bits; ++k) {
    if (!detail::is_prime_u64(k)) continue;
    BigInt root;
    if (mpz_root(root.get_mpz_t(), x.get_mpz_t(), k) != 0) return std::make_pair(root, k);
  }
  return std::nullopt;
}

}  // namespace

bool is_probable_prime(const BigInt& n, int rounds) {
  std::uint64_t used = 0;
  return probable_prime_counted(n, rounds, used);
}

std::optional<std::pair<BigInt, unsigned long>> is_perfect_power(const BigInt& x) {
  if (x < 2) throw std::invalid_argument("is_perfect_power: requires x >= 2");
  BigInt base = x;
  unsigned long exponent = 1;
  while (auto r = prime_power_root(base)) {
    base = r->first;
    exponent *= r->second;
  }
  if (exponent < 2) return std::nullopt;
  return std::make_pair(base, exponent);
}

std::optional<BigInt> pollard_brent(const BigInt& n, std::uint64_t seed, std::uint64_t max_iterations,
                                    std::uint64_t* iterations_used) {
  std::uint64_t used = 0;
  auto report = [&] {
    if (iterations_used) *iterations_used = used;
  };
  if (mpz_even_p(n.get_mpz_t())) {
    report();
    return BigInt(2);
  }
  SplitMix64Stream stream(seed ^ low_word(n));
  constexpr std::uint64_t batch = 128;
  while (used < max_iterations) {
    const BigInt c = BigInt(static_cast<unsigned long>(stream() | 1)) % n;
    BigInt y = BigInt(static_cast<unsigned long>(stream())) % n;
    BigInt x, ys, q = 1, g = 1, diff;
    auto step = [&](BigInt& v) {
      v *= v;
      v += c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
      ++used;
    };
    std::uint64_t r = 1;
    while (g == 1 && used < max_iterations) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) step(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
        ys = y;
        const std::uint64_t lim = std::min(batch, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          step(y);
          diff = x - y;
          q *= diff;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      r *= 2;
    }
    if (g == 1) break;
    if (g == n) {
      // Backtrack one step at a time from the last saved point.
      do {
        step(ys);
        diff = x - ys;
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n && g != 1) {
      report();
      return g;
    }
  }
  report();
  return std::nullopt;
}

namespace {

// Projective x-only arithmetic on a Montgomery curve By^2 = x^3 + Ax^2 + x,
// with a24 = (A + 2) / 4. All scratch lives in the object.
class MontgomeryCurve {
 public:
  struct Point {
    BigInt x, z;
  };

  MontgomeryCurve(const BigInt& n, const BigInt& a24) : n_(n), a24_(a24) {}

  void dbl(Point& r, const Point& p) {
    t1_ = p.x + p.z;
    mulmod(t1_, t1_, t1_);
    t2_ = p.x - p.z;
    mulmod(t2_, t2_, t2_);
    mulmod(r.x, t1_, t2_);
    t3_ = t1_ - t2_;
    mulmod(t4_, a24_, t3_);
    t4_ += t2_;
    mulmod(r.z, t3_, t4_);
  }

  // r = p + q given d = p - q. r may alias p or q but not d.
  void add(Point& r, const Point& p, const Point& q, const Point& d) {
    t1_ = p.x - p.z;
    t2_ = q.x + q.z;
    mulmod(t1_, t1_, t2_);
    t3_ = p.x + p.z;
    t4_ = q.x - q.z;
    mulmod(t3_, t3_, t4_);
    t2_ = t1_ + t3_;
    t4_ = t1_ - t3_;
    mulmod(t2_, t2_, t2_);
    mulmod(t4_, t4_, t4_);
    mulmod(r.x, d.z, t2_);
    mulmod(r.z, d.x, t4_);
  }

  Point multiply(const Point& p, unsigned long k) {
    Point r0 = p, r1;
    dbl(r1, p);
    for (int bit = 62 - __builtin_clzl(k); bit >= 0; --bit) {
      if ((k >> bit) & 1) {
        add(r0, r1, r0, p);
        dbl(r1, r1);
      } else {
        add(r1, r0, r1, p);
        dbl(r0, r0);
      }
    }
    return r0;
  }

  void mulmod(BigInt& r, const BigInt& a, const BigInt& b) {
    mpz_mul(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n_.get_mpz_t());
  }

 private:
  const BigInt& n_;
  BigInt a24_;
  BigInt t1_, t2_, t3_, t4_;
};

// Nontrivial divisor of n, if g is one.
std::optional<BigInt> proper(const BigInt& g, const BigInt& n) {
  if (g != 1 && g != n) return g;
  return std::nullopt;
}

}  // namespace

std::optional<BigInt> ecm_factor(const BigInt& n, std::uint64_t seed, unsigned curves, unsigned long b1,
                                 unsigned* curves_used) {
  if (curves_used) *curves_used = 0;
  if (mpz_even_p(n.get_mpz_t())) return BigInt(2);
  if (b1 < 100) throw std::invalid_argument("ecm_factor: b1 must be at least 100");
  using Point = MontgomeryCurve::Point;
  constexpr unsigned long kD = 2310;
  const unsigned long b2 = 100 * b1;
  const auto primes = odd_primes_up_to(b2 + kD);
  std::vector<char> is_prime(b2 + kD + 1, 0);
  for (unsigned long p : primes) is_prime[p] = 1;
  std::vector<unsigned long> baby;
  for (unsigned long j = 1; j < kD / 2; j += 2)
    if (std::gcd(j, kD) == 1) baby.push_back(j);

  SplitMix64Stream stream(seed ^ low_word(n));
  BigInt g;
  for (unsigned c = 0; c < curves; ++c) {
    if (curves_used) *curves_used = c + 1;
    // Suyama: sigma -> u = sigma^2 - 5, v = 4 sigma.
    const BigInt sigma = BigInt(static_cast<unsigned long>(6 + stream() % 0xFFFFFFFFull));
    const BigInt u = (sigma * sigma - 5) % n, v = (4 * sigma) % n;
    BigInt u3 = u * u * u % n, den = 16 * u3 * v % n, inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t()) == 0) {
      mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t());
      if (auto f = proper(g, n)) return f;
      continue;
    }
    BigInt vmu = v - u;
    const BigInt a24 = vmu * vmu % n * vmu % n * ((3 * u + v) % n) % n * inv % n;
    MontgomeryCurve curve(n, a24);
    Point q{u3, v * v * v % n};

    // Stage 1: multiply by every prime power <= b1.
    for (unsigned long pe = 2; pe <= b1; pe *= 2) curve.dbl(q, q);
    for (unsigned long p : primes) {
      if (p > b1) break;
      unsigned long pe = p;
      while (pe <= b1 / p) pe *= p;
      q = curve.multiply(q, pe);
    }
    mpz_gcd(g.get_mpz_t(), q.z.get_mpz_t(), n.get_mpz_t());
    if (auto f = proper(g, n)) return f;
    if (g == n) continue;

    // Stage 2: primes m*D +- j in (b1, b2], baby steps j coprime to D.
    std::vector<Point> babies;
    babies.reserve(baby.size());
    Point two, prev = q, cur = q;
    curve.dbl(two, q);
    for (unsigned long j = 1; j < kD / 2; j += 2) {
      if (std::gcd(j, kD) == 1) babies.push_back(cur);
      Point next;
      if (j == 1) {
        next = curve.multiply(q, 3);
      } else {
        curve.add(next, cur, two, prev);
      }
      prev = cur;
      cur = next;
    }
    const unsigned long m0 = std::max(2ul, b1 / kD);
    const Point giant = curve.multiply(q, kD);
    Point rm = curve.multiply(q, m0 * kD), rprev = curve.multiply(q, (m0 - 1) * kD), tmp;
    BigInt acc = 1, t, s;
    for (unsigned long m = m0; m * kD <= b2 + kD / 2; ++m) {
      for (std::size_t i = 0; i < baby.size(); ++i) {
        const unsigned long lo = m * kD - baby[i], hi = m * kD + baby[i];
        const bool hit = (lo > b1 && lo <= b2 && is_prime[lo]) || (hi > b1 && hi <= b2 && is_prime[hi]);
        if (!hit) continue;
        curve.mulmod(t, rm.x, babies[i].z);
        curve.mulmod(s, babies[i].x, rm.z);
        t -= s;
        curve.mulmod(acc, acc, t);
      }
      curve.add(tmp, rm, giant, rprev);
      rprev = rm;
      rm = tmp;
    }
    mpz_gcd(g.get_mpz_t(), acc.get_mpz_t(), n.get_mpz_t());
    if (auto f = proper(g, n)) return f;
  }
  return std::nullopt;
}

namespace {

struct Piece {
  BigInt value;
  bool prime = false;  // probable prime
};

class Certifier {
 public:
  Certifier(const BigInt& b, const FactorBudget& budget) {
    cert_.input = b;
    cert_.budget = budget;
    cert_.primality_error_log2 = -2 * budget.primality_rounds;
  }

  SquarefreeCertificate run() {
    BigInt r = cert_.input;
    if (!trial_divide(r)) return finish_with_pieces({Piece{r, false}}, ResidualClass::Unknown);
    if (r == 1) return finish_with_pieces({}, ResidualClass::One);

    std::vector<Piece> pieces{Piece{r, is_prime(r)}};
    for (;;) {
      auto it = std::find_if(pieces.begin(), pieces.end(), [](const Piece& p) { return !p.prime; });
      if (it == pieces.end()) break;
      const BigInt q = it->value;

      if (auto pp = is_perfect_power(q)) {
        mark_repeated(pp->first);
        return finish_with_pieces(pieces, ResidualClass::Composite);
      }
      auto d = split(q);
      if (!d) {
        cert_.effort.budget_exhausted = true;
        return finish_with_pieces(pieces, ResidualClass::Composite);
      }
      const BigInt e = q / *d;
      BigInt g;
      mpz_gcd(g.get_mpz_t(), d->get_mpz_t(), e.get_mpz_t());
      if (g != 1) {
        mark_repeated(g);
        return finish_with_pieces(pieces, ResidualClass::Composite);
      }
      *it = Piece{*d, is_prime(*d)};
      pieces.push_back(Piece{e, is_prime(e)});
    }

    // All pieces are probable primes, pairwise coprime by construction.
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.value < b.value; });
    Piece largest = pieces.back();
    pieces.pop_back();
    for (const auto& p : pieces) cert_.found_factors.push_back({p.value, 1, fits_u64(p.value)});
    if (fits_u64(largest.value)) {
      cert_.found_factors.push_back({largest.value, 1, true});
      return finish_with_pieces({}, ResidualClass::One);
    }
    cert_.residual = largest.value;
    cert_.residual_class = ResidualClass::ProbablePrime;
    cert_.status = SquarefreeStatus::SquareFree;
    return cert_;
  }

 private:
  std::uint64_t rho_left() const {
    return cert_.budget.rho_iterations - std::min(cert_.budget.rho_iterations, cert_.effort.rho_iterations);
  }

  // Rho first, for small factors; with ECM enabled rho gets a bounded slice
  // per cofactor and the curves take over.
  std::optional<BigInt> split(const BigInt& q) {
    const unsigned curves_left = cert_.budget.ecm_curves - std::min<unsigned>(cert_.budget.ecm_curves, cert_.effort.ecm_curves);
    std::uint64_t slice = rho_left();
    if (curves_left > 0) slice = std::min<std::uint64_t>(slice, kRhoSlice);
    if (slice > 0) {
      std::uint64_t used = 0;
      auto d = pollard_brent(q, splitmix64_mix(cert_.effort.rho_restarts + 1), slice, &used);
      cert_.effort.rho_iterations += used;
      ++cert_.effort.rho_restarts;
      if (d) return d;
    }
    if (curves_left == 0) return std::nullopt;
    unsigned used = 0;
    auto d = ecm_factor(q, splitmix64_mix(cert_.effort.ecm_curves + 7), curves_left, cert_.budget.ecm_b1, &used);
    cert_.effort.ecm_curves += used;
    return d;
  }

  static constexpr std::uint64_t kRhoSlice = 300'000;

  bool is_prime(const BigInt& n) { return probable_prime_counted(n, cert_.budget.primality_rounds, cert_.effort.primality_rounds); }

  // Divides out all primes <= bound. Returns false (with the certificate
  // marked NotSquareFree) as soon as a prime with exponent >= 2 appears.
  bool trial_divide(BigInt& r) {
    const auto primes = odd_primes_up_to(cert_.budget.trial_bound);
    for (unsigned long p : primes) {
      if (r == 1) break;
      if (BigInt(p) * p > r) {
        cert_.found_factors.push_back({r, 1, true});
        r = 1;
        break;
      }
      ++cert_.effort.trial_divisions;
      if (!mpz_divisible_ui_p(r.get_mpz_t(), p)) continue;
      unsigned long e = 0;
      while (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
        mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
        ++e;
      }
      cert_.found_factors.push_back({BigInt(p), e, true});
      if (e >= 2) {
        cert_.status = SquarefreeStatus::NotSquareFree;
        cert_.repeated_prime = BigInt(p);
        return false;
      }
    }
    return true;
  }

  // g > 1 has g^2 | input. Record it, split to a prime if affordable.
  void mark_repeated(BigInt g) {
    cert_.status = SquarefreeStatus::NotSquareFree;
    for (int guard = 0; guard < 64; ++guard) {
      if (auto pp = is_perfect_power(g); pp && pp->first > 1) g = pp->first;
      if (is_prime(g)) break;
      const std::uint64_t left = cert_.budget.rho_iterations - std::min(cert_.budget.rho_iterations, cert_.effort.rho_iterations);
      std::uint64_t used = 0;
      auto d = left ? pollard_brent(g, splitmix64_mix(guard + 99), left, &used) : std::nullopt;
      cert_.effort.rho_iterations += used;
      if (!d) {
        cert_.repeated_prime_is_prime = false;
        break;
      }
      g = std::min<BigInt>(*d, BigInt(g / *d));
    }
    cert_.repeated_prime = g;
  }

  SquarefreeCertificate finish_with_pieces(const std::vector<Piece>& pieces, ResidualClass unresolved_class) {
    BigInt residual = 1;
    bool any_composite = false;
    for (const auto& p : pieces) {
      if (p.prime && cert_.status != SquarefreeStatus::NotSquareFree) {
        cert_.found_factors.push_back({p.value, 1, fits_u64(p.value)});
      } else {
        residual *= p.value;
        any_composite = any_composite || !p.prime;
      }
    }
    cert_.residual = residual;
    if (residual == 1) {
      cert_.residual_class = ResidualClass::One;
    } else if (cert_.status == SquarefreeStatus::NotSquareFree) {
      cert_.residual_class = pieces.size() == 1 && pieces.front().prime ? ResidualClass::ProbablePrime
                                                                        : ResidualClass::Unknown;
      if (unresolved_class == ResidualClass::Composite && any_composite) cert_.residual_class = ResidualClass::Composite;
    } else {
      cert_.residual_class = unresolved_class;
    }
    if (cert_.status != SquarefreeStatus::NotSquareFree)
      cert_.status = residual == 1 ? SquarefreeStatus::SquareFree : SquarefreeStatus::Unknown;
    std::sort(cert_.found_factors.begin(), cert_.found_factors.end(),
              [](const FoundFactor& a, const FoundFactor& b) { return a.prime < b.prime; });
    return cert_;
  }

  SquarefreeCertificate cert_;
};

}  // namespace

SquarefreeCertificate certify_squarefree(const BigInt& b, const FactorBudget& budget) {
  if (b < 1 || mpz_even_p(b.get_mpz_t()))
    throw std::invalid_argument("certify_squarefree: input must be odd and positive, got " + b.get_str());
  if (budget.trial_bound < 3 || budget.primality_rounds < 1 || (budget.ecm_curves > 0 && budget.ecm_b1 < 100))
    throw std::invalid_argument("certify_squarefree: budget must be positive");
  return Certifier(b, budget).run();
}

}  // namespace dgs
