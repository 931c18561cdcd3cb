#include "dgs/cospectral_oracle.hpp"

#include "dgs/criterion.hpp"
#include "dgs/walk_matrix.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace dgs {

namespace {

template <typename A, typename B>
bool equal_exact(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

Matrix<Rational> to_rational(const BigIntMatrix& m) { return m.cast<Rational>(); }

// Runs body(i) for i in [0, count) on `workers` threads.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

bool operator<(const SpectrumKey& a, const SpectrumKey& b) {
  if (a.adjacency.coeffs != b.adjacency.coeffs) return a.adjacency.coeffs < b.adjacency.coeffs;
  return a.complement.coeffs < b.complement.coeffs;
}

SpectrumKey spectrum_key(const Graph& g) {
  return {char_poly(g.adjacency_matrix<BigInt>()), char_poly(complement(g).adjacency_matrix<BigInt>())};
}

std::size_t CospectralEnumeration::non_singleton_count() const {
  return static_cast<std::size_t>(
      std::count_if(classes.begin(), classes.end(), [](const CospectralClass& c) { return c.members.size() > 1; }));
}

CospectralEnumeration enumerate_cospectral_classes(int n, unsigned shards) {
  if (n < 1 || n > kMaxOracleOrder)
    throw std::invalid_argument("enumerate_cospectral_classes: n must be in [1, " + std::to_string(kMaxOracleOrder) +
                                "], got " + std::to_string(n));
  const int pairs = n * (n - 1) / 2;
  const std::uint64_t total = std::uint64_t{1} << pairs;
  const int prefix_bits = std::min(pairs, 8);
  const std::uint64_t chunks = std::uint64_t{1} << prefix_bits;
  const std::uint64_t chunk_len = total / chunks;

  std::vector<std::unordered_set<std::uint64_t>> found(chunks);
  parallel_for(chunks, std::max(1u, shards), [&](std::size_t c) {
    auto& out = found[c];
    for (std::uint64_t code = c * chunk_len; code < (c + 1) * chunk_len; ++code)
      out.insert(canonical_code(from_upper_triangle_code(n, code)));
  });
  std::set<std::uint64_t> reps;
  for (auto& s : found) reps.insert(s.begin(), s.end());

  std::vector<std::uint64_t> codes(reps.begin(), reps.end());
  std::vector<SpectrumKey> keys(codes.size());
  parallel_for(codes.size(), std::max(1u, shards),
               [&](std::size_t i) { keys[i] = spectrum_key(from_upper_triangle_code(n, codes[i])); });

  std::map<SpectrumKey, std::vector<std::uint64_t>> grouped;
  for (std::size_t i = 0; i < codes.size(); ++i) grouped[keys[i]].push_back(codes[i]);

  CospectralEnumeration out;
  out.n = n;
  out.labeled_graphs = total;
  out.isomorphism_classes = codes.size();
  std::vector<std::pair<const SpectrumKey*, const std::vector<std::uint64_t>*>> order;
  for (const auto& [k, v] : grouped) order.emplace_back(&k, &v);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second->size() != b.second->size()) return a.second->size() > b.second->size();
    return a.second->front() < b.second->front();
  });
  for (const auto& [k, v] : order) {
    CospectralClass cls{*k, {}};
    for (auto code : *v) cls.members.push_back(from_upper_triangle_code(n, code));
    out.classes.push_back(std::move(cls));
  }
  return out;
}

QReconstruction reconstruct_q(const Graph& g, const Graph& h) {
  if (g.order() != h.order()) throw std::invalid_argument("reconstruct_q: graphs have different orders");
  const int n = g.order();
  const BigIntMatrix wg = walk_matrix(g);
  const BigIntMatrix wh = walk_matrix(h);
  QReconstruction r;
  try {
    r.q = solve_rational(wg.transpose(), wh.transpose());
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError("reconstruct_q: first graph is not controllable", e.rank());
  }
  const Matrix<Rational>& q = r.q.entries;
  const Matrix<Rational> qt = q.transpose();
  const Matrix<Rational> id = Matrix<Rational>::Identity(n, n);
  const Vector<Rational> ones = Vector<Rational>::Constant(n, Rational(1));
  r.orthogonal = equal_exact(Matrix<Rational>(qt * q), id);
  r.fixes_ones = equal_exact(Vector<Rational>(q * ones), ones);
  const Matrix<Rational> ag = g.adjacency_matrix<Rational>();
  const Matrix<Rational> ah = h.adjacency_matrix<Rational>();
  r.conjugates = equal_exact(Matrix<Rational>(qt * ag * q), ah);
  r.walk_relation = equal_exact(Matrix<Rational>(qt * to_rational(wg)), to_rational(wh));
  r.d_n = smith_normal_form(wg).diag.back();
  r.level_divides_d_n = mpz_divisible_p(r.d_n.get_mpz_t(), r.q.level.get_mpz_t()) != 0;
  return r;
}

PrimeSupport prime_support(const BigInt& x, const FactorBudget& budget) {
  PrimeSupport out;
  BigInt r = abs(x);
  if (r <= 1) return out;
  std::set<BigInt> primes;
  if (mpz_even_p(r.get_mpz_t())) {
    primes.insert(BigInt(2));
    mpz_remove(r.get_mpz_t(), r.get_mpz_t(), BigInt(2).get_mpz_t());
  }
  for (unsigned long p : odd_primes_up_to(budget.trial_bound)) {
    if (r == 1) break;
    if (BigInt(p) * p > r) break;
    if (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
      primes.insert(BigInt(p));
      mpz_remove(r.get_mpz_t(), r.get_mpz_t(), BigInt(p).get_mpz_t());
    }
  }
  std::vector<BigInt> stack;
  if (r > 1) stack.push_back(r);
  std::uint64_t rho_left = budget.rho_iterations;
  std::uint64_t seed = 1;
  while (!stack.empty()) {
    BigInt m = stack.back();
    stack.pop_back();
    if (is_probable_prime(m, budget.primality_rounds)) {
      primes.insert(m);
      continue;
    }
    if (auto pp = is_perfect_power(m)) {
      stack.push_back(pp->first);
      continue;
    }
    std::optional<BigInt> f;
    while (!f && rho_left > 0) {
      std::uint64_t used = 0;
      f = pollard_brent(m, seed++, rho_left, &used);
      rho_left -= std::min(used, rho_left);
    }
    if (!f) {
      primes.insert(m);
      out.complete = false;
      continue;
    }
    BigInt cof = m / *f;
    stack.push_back(*f);
    stack.push_back(cof);
  }
  out.primes.assign(primes.begin(), primes.end());
  return out;
}

PrimeSupport level_prime_support(const RationalMatrix& q, const FactorBudget& budget) {
  return prime_support(q.level, budget);
}

Matrix<Rational> gm_switching_matrix(int n, const GmPartition& p) {
  Matrix<Rational> q = Matrix<Rational>::Identity(n, n);
  Rational c(2, static_cast<long>(p.cell.size()));
  c.canonicalize();
  for (int i : p.cell)
    for (int j : p.cell) q(i, j) = i == j ? Rational(c - 1) : c;
  return q;
}

std::vector<GmMate> gm_mates(const Graph& g, const FactorBudget& budget, std::span<const int> cell_sizes) {
  std::vector<GmMate> out;
  const bool controllable = det_walk(g) != 0;
  const SpectrumKey key = spectrum_key(g);
  for (auto& p : find_gm_partitions(g, cell_sizes)) {
    GmMate m{p, gm_switch(g, p), false, false, std::nullopt, {}, false};
    m.isomorphic = is_isomorphic(g, m.mate);
    m.keys_equal = spectrum_key(m.mate) == key;
    if (controllable) {
      m.q = reconstruct_q(g, m.mate);
      m.level_primes = level_prime_support(m.q->q, budget);
      m.matches_switching_matrix = equal_exact(m.q->q.entries, gm_switching_matrix(g.order(), p));
    }
    out.push_back(std::move(m));
  }
  return out;
}

// Oracle report ----------------------------------------------------------

OracleReport run_oracle(int n, const FactorBudget& budget, unsigned workers, std::uint64_t seed) {
  const CospectralEnumeration en = enumerate_cospectral_classes(n, workers);
  OracleReport r;
  r.n = n;
  r.seed = seed;
  r.labeled_graphs = en.labeled_graphs;
  r.isomorphism_classes = en.isomorphism_classes;
  r.key_classes = en.classes.size();
  r.non_singleton = en.non_singleton_count();

  struct Slot {
    std::size_t cls, member;
  };
  std::vector<Slot> slots;
  for (std::size_t c = 0; c < en.classes.size(); ++c)
    for (std::size_t m = 0; m < en.classes[c].members.size(); ++m) slots.push_back({c, m});
  std::vector<VerdictKind> kinds(slots.size());
  parallel_for(slots.size(), workers, [&](std::size_t i) {
    kinds[i] = certify(en.classes[slots[i].cls].members[slots[i].member], budget).kind;
  });

  std::size_t s = 0;
  for (std::size_t c = 0; c < en.classes.size(); ++c) {
    const auto& cls = en.classes[c];
    OracleClassLine line;
    line.index = c + 1;
    for (std::size_t m = 0; m < cls.members.size(); ++m, ++s) {
      const VerdictKind k = kinds[s];
      switch (k) {
        case VerdictKind::DgsByFn:
        case VerdictKind::DgsByExtended: ++r.certified_dgs; break;
        case VerdictKind::NotControllable: ++r.not_controllable; break;
        case VerdictKind::CriterionInconclusive: ++r.inconclusive; break;
        case VerdictKind::FactorizationUnknown: ++r.unknown; break;
      }
      if (cls.members.size() > 1) {
        line.graph6.push_back(encode_graph6(cls.members[m]));
        line.verdicts.push_back(to_string(k));
        if (k == VerdictKind::DgsByFn || k == VerdictKind::DgsByExtended)
          r.soundness_violations.push_back(encode_graph6(cls.members[m]));
      }
    }
    if (cls.members.size() < 2) continue;
    for (std::size_t a = 0; a < cls.members.size(); ++a) {
      if (det_walk(cls.members[a]) == 0) continue;
      for (std::size_t b = 0; b < cls.members.size(); ++b) {
        if (a == b) continue;
        const auto q = reconstruct_q(cls.members[a], cls.members[b]);
        ++r.q_checked;
        if (!q.verified() || !q.level_divides_d_n) ++r.q_failures;
      }
    }
    r.non_singleton_classes.push_back(std::move(line));
  }
  return r;
}

std::string format_oracle_report(const OracleReport& r) {
  std::ostringstream os;
  os << "# dgs-oracle-report/1\n";
  os << "# seed\t" << r.seed << "\n";
  os << "n\tlabeled\tiso_classes\tkey_classes\tnon_singleton\tdgs_certified\tnot_controllable\tinconclusive\t"
        "unknown\tq_checked\tq_failures\tviolations\n";
  os << r.n << '\t' << r.labeled_graphs << '\t' << r.isomorphism_classes << '\t' << r.key_classes << '\t'
     << r.non_singleton << '\t' << r.certified_dgs << '\t' << r.not_controllable << '\t' << r.inconclusive << '\t'
     << r.unknown << '\t' << r.q_checked << '\t' << r.q_failures << '\t' << r.soundness_violations.size() << "\n";
  for (const auto& line : r.non_singleton_classes) {
    os << "class\t" << line.index << '\t' << line.graph6.size() << '\t';
    for (std::size_t i = 0; i < line.graph6.size(); ++i) os << (i ? "," : "") << line.graph6[i];
    os << '\t';
    for (std::size_t i = 0; i < line.verdicts.size(); ++i) os << (i ? "," : "") << line.verdicts[i];
    os << '\n';
  }
  for (const auto& v : r.soundness_violations) os << "violation\t" << v << '\n';
  return os.str();
}

}  // namespace dgs
