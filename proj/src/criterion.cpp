#include "dgs/criterion.hpp"

#include "dgs/exact_linalg.hpp"

#include <sstream>

namespace dgs {

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::NotControllable: return "NotControllable";
    case VerdictKind::DgsByFn: return "DgsByFn";
    case VerdictKind::DgsByExtended: return "DgsByExtended";
    case VerdictKind::CriterionInconclusive: return "CriterionInconclusive";
    case VerdictKind::FactorizationUnknown: return "FactorizationUnknown";
  }
  return "?";
}

std::string to_string(Clause c) {
  switch (c) {
    case Clause::None: return "none";
    case Clause::Controllability: return "controllability";
    case Clause::Valuation: return "valuation";
    case Clause::Rank2: return "rank2";
    case Clause::SnfShape: return "snf_shape";
    case Clause::Containment: return "containment";
    case Clause::SquareFree: return "square_free";
    case Clause::Factorization: return "factorization";
  }
  return "?";
}

namespace {

bool is_power_of_two(const BigInt& x, unsigned long& exponent) {
  if (x <= 0) return false;
  exponent = mpz_scan1(x.get_mpz_t(), 0);
  return mpz_sizeinbase(x.get_mpz_t(), 2) == exponent + 1;
}

ContainmentCheck containment_for(const std::string& variant, const BigIntMatrix& half_gram,
                                 const BigIntMatrix& image_columns) {
  ContainmentCheck check;
  check.variant = variant;
  const F2Matrix gram2 = F2Matrix::from_integer(half_gram);
  const F2Matrix image2 = F2Matrix::from_integer(image_columns);
  check.half_gram_rank2 = rank_f2(gram2);
  check.holds = true;
  for (auto& v : kernel_basis_f2(gram2)) {
    BitVector wv = image2.apply(v);
    if (!wv.is_zero()) check.holds = false;
    check.witnesses.push_back({std::move(v), std::move(wv)});
  }
  return check;
}

// State shared by both tests so that certify() computes each quantity once.
class Evaluation {
 public:
  Evaluation(const Graph& g, const FactorBudget& budget) : g_(g), budget_(budget) {
    ev_.n = g.order();
    ev_.det_w = det_bareiss(walk_matrix(g));
  }

  Evidence& evidence() { return ev_; }

  bool controllable() const { return ev_.det_w != 0; }

  const Valuation2& valuation() {
    if (!ev_.valuation) ev_.valuation = valuation2(ev_.det_w);
    return *ev_.valuation;
  }

  const SquarefreeCertificate& squarefree() {
    if (!ev_.squarefree) ev_.squarefree = certify_squarefree(valuation().odd_part, budget_);
    return *ev_.squarefree;
  }

  const WalkBundle& bundle() {
    if (!bundle_) bundle_ = build_walk_bundle(g_);
    return *bundle_;
  }

  Index rank2() {
    if (!ev_.rank2_w) ev_.rank2_w = rank_f2(F2Matrix::from_integer(bundle().w));
    return *ev_.rank2_w;
  }

  const SnfShape& snf_shape() {
    if (!ev_.snf_diag) ev_.snf_diag = smith_normal_form(bundle().w).diag;
    if (!ev_.snf_shape) ev_.snf_shape = classify_snf(*ev_.snf_diag, ev_.n);
    return *ev_.snf_shape;
  }

  void populate_all() {
    if (!controllable()) return;
    squarefree();
    rank2();
    snf_shape();
    containment_holds();
  }

  bool containment_holds() {
    if (ev_.containment.empty()) ev_.containment = kernel_containment(bundle());
    return ev_.containment.front().holds;
  }

 private:
  const Graph& g_;
  FactorBudget budget_;
  Evidence ev_;
  std::optional<WalkBundle> bundle_;
};

struct Outcome {
  VerdictKind kind;
  Clause clause;
  std::string detail;
};

Outcome square_free_outcome(const SquarefreeCertificate& cert, VerdictKind success) {
  switch (cert.status) {
    case SquarefreeStatus::SquareFree: return {success, Clause::None, ""};
    case SquarefreeStatus::NotSquareFree:
      return {VerdictKind::CriterionInconclusive, Clause::SquareFree,
              "odd part divisible by " + cert.repeated_prime->get_str() + "^2"};
    case SquarefreeStatus::Unknown:
      return {VerdictKind::FactorizationUnknown, Clause::Factorization,
              "square-freeness of the odd part undecided within budget (residual has " +
                  std::to_string(mpz_sizeinbase(cert.residual.get_mpz_t(), 10)) + " digits)"};
  }
  return {VerdictKind::CriterionInconclusive, Clause::Factorization, ""};
}

Outcome run_fn(Evaluation& e) {
  if (!e.controllable()) return {VerdictKind::NotControllable, Clause::Controllability, "det(W) = 0"};
  const int n = e.evidence().n;
  const auto& v = e.valuation();
  if (v.alpha != static_cast<unsigned long>(n / 2)) {
    return {VerdictKind::CriterionInconclusive, Clause::Valuation,
            "2-adic valuation of det(W) is " + std::to_string(v.alpha) + ", expected floor(n/2) = " +
                std::to_string(n / 2)};
  }
  return square_free_outcome(e.squarefree(), VerdictKind::DgsByFn);
}

Outcome run_extended(Evaluation& e) {
  if (!e.controllable()) return {VerdictKind::NotControllable, Clause::Controllability, "det(W) = 0"};
  const int n = e.evidence().n;
  const Index k = (n + 1) / 2;
  e.valuation();
  if (e.rank2() != k)
    return {VerdictKind::CriterionInconclusive, Clause::Rank2,
            "rank_2(W) = " + std::to_string(e.rank2()) + ", expected ceil(n/2) = " + std::to_string(k)};
  if (!e.snf_shape().matches)
    return {VerdictKind::CriterionInconclusive, Clause::SnfShape,
            "Smith form of W is not diag(1,...,1, 2^l1, ..., 2^lt * b)"};
  if (!e.containment_holds())
    return {VerdictKind::CriterionInconclusive, Clause::Containment,
            "a kernel vector of the half-Gram matrix has W v != 0 (mod 2)"};
  return square_free_outcome(e.squarefree(), VerdictKind::DgsByExtended);
}

DgsVerdict make_verdict(Evaluation& e, const Outcome& fn, const std::optional<Outcome>& ext) {
  DgsVerdict v;
  v.fn_clause = fn.clause;
  if (ext) v.extended_clause = ext->clause;
  v.evidence = e.evidence();
  if (fn.kind == VerdictKind::DgsByFn) {
    v.kind = fn.kind;
    v.detail = "det(W)/2^floor(n/2) is odd and square-free";
  } else if (ext && ext->kind == VerdictKind::DgsByExtended) {
    v.kind = ext->kind;
    v.detail = "rank, Smith form and kernel containment conditions hold";
  } else if (fn.kind == VerdictKind::NotControllable) {
    v.kind = fn.kind;
    v.detail = fn.detail;
  } else if (fn.kind == VerdictKind::FactorizationUnknown ||
             (ext && ext->kind == VerdictKind::FactorizationUnknown)) {
    v.kind = VerdictKind::FactorizationUnknown;
    v.detail = fn.kind == VerdictKind::FactorizationUnknown ? fn.detail : ext->detail;
  } else {
    v.kind = VerdictKind::CriterionInconclusive;
    v.detail = ext ? ext->detail : fn.detail;
  }
  return v;
}

}  // namespace

SnfShape classify_snf(std::span<const BigInt> diag, int n) {
  SnfShape shape;
  const Index k = (n + 1) / 2;
  while (shape.leading_ones < static_cast<Index>(diag.size()) && diag[shape.leading_ones] == 1) ++shape.leading_ones;
  if (diag.empty()) return shape;
  const Valuation2 last = valuation2(diag.back());
  shape.b = last.odd_part;
  if (shape.leading_ones != std::min<Index>(k, static_cast<Index>(diag.size()))) return shape;
  for (Index i = k; i < static_cast<Index>(diag.size()); ++i) {
    if (i + 1 == static_cast<Index>(diag.size())) {
      if (last.alpha == 0) {  // d_n must be even once rank_2 < n
        shape.two_exponents.clear();
        return shape;
      }
      shape.two_exponents.push_back(last.alpha);
    } else {
      unsigned long l = 0;
      if (!is_power_of_two(diag[i], l) || l == 0) {
        shape.two_exponents.clear();
        return shape;
      }
      shape.two_exponents.push_back(l);
    }
  }
  shape.matches = true;
  return shape;
}

std::vector<ContainmentCheck> kernel_containment(const WalkBundle& b) {
  const int n = b.n;
  std::vector<ContainmentCheck> out;
  if (n % 2 == 0) {
    out.push_back(containment_for("standard", b.full_half_gram, b.w));
    return out;
  }
  // Odd n: drop the e column (its W^T-image is odd in entry (1,1)).
  out.push_back(containment_for("reduced", b.full_half_gram.rightCols(n - 1), b.w.rightCols(n - 1)));
  out.push_back(containment_for("repaired", b.full_half_gram, b.w));
  return out;
}

DgsVerdict check_fn(const Graph& g, const FactorBudget& budget) {
  Evaluation e(g, budget);
  const Outcome fn = run_fn(e);
  return make_verdict(e, fn, std::nullopt);
}

DgsVerdict check_extended(const Graph& g, const FactorBudget& budget) {
  Evaluation e(g, budget);
  const Outcome ext = run_extended(e);
  DgsVerdict v = make_verdict(e, Outcome{VerdictKind::CriterionInconclusive, Clause::None, ""}, ext);
  v.fn_clause = Clause::None;
  if (ext.kind == VerdictKind::NotControllable) v.kind = VerdictKind::NotControllable, v.detail = ext.detail;
  return v;
}

DgsVerdict certify(const Graph& g, const FactorBudget& budget) {
  Evaluation e(g, budget);
  const Outcome fn = run_fn(e);
  std::optional<Outcome> ext;
  if (fn.kind != VerdictKind::NotControllable) ext = run_extended(e);
  e.populate_all();
  return make_verdict(e, fn, ext);
}

}  // namespace dgs
