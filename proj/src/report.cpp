#include "dgs/report.hpp"

#include "dgs/walk_matrix.hpp"

#include <cstdio>
#include <sstream>

namespace dgs {

using nlohmann::ordered_json;

namespace {

ordered_json header(const char* schema, std::uint64_t seed) {
  ordered_json j;
  j["schema"] = schema;
  j["seed"] = seed;
  return j;
}

void put_graph(ordered_json& j, const Graph& g, const Provenance& where) {
  j["source"] = {{"file", where.source}, {"record", where.record}};
  j["n"] = g.order();
  j["graph6"] = encode_graph6(g);
}

ordered_json decimal_array(std::span<const BigInt> xs) {
  ordered_json a = ordered_json::array();
  for (const auto& x : xs) a.push_back(to_decimal(x));
  return a;
}

ordered_json certificate_json(const SquarefreeCertificate& c) {
  ordered_json j;
  j["input"] = to_decimal(c.input);
  j["status"] = to_string(c.status);
  ordered_json factors = ordered_json::array();
  for (const auto& f : c.found_factors)
    factors.push_back({{"prime", to_decimal(f.prime)}, {"exponent", f.exponent}, {"proven_prime", f.proven_prime}});
  j["factors"] = std::move(factors);
  j["residual"] = to_decimal(c.residual);
  j["residual_class"] = to_string(c.residual_class);
  j["repeated_prime"] = c.repeated_prime ? ordered_json(to_decimal(*c.repeated_prime)) : ordered_json(nullptr);
  j["primality_error_log2"] = c.primality_error_log2;
  j["effort"] = {{"trial_divisions", c.effort.trial_divisions},
                 {"rho_iterations", c.effort.rho_iterations},
                 {"rho_restarts", c.effort.rho_restarts},
                 {"ecm_curves", c.effort.ecm_curves},
                 {"primality_rounds", c.effort.primality_rounds},
                 {"budget_exhausted", c.effort.budget_exhausted}};
  j["budget"] = {{"trial_bound", c.budget.trial_bound},
                 {"rho_iterations", c.budget.rho_iterations},
                 {"ecm_curves", c.budget.ecm_curves},
                 {"ecm_b1", c.budget.ecm_b1},
                 {"primality_rounds", c.budget.primality_rounds}};
  return j;
}

ordered_json containment_json(const ContainmentCheck& c) {
  ordered_json j;
  j["variant"] = c.variant;
  j["half_gram_rank2"] = c.half_gram_rank2;
  j["holds"] = c.holds;
  ordered_json w = ordered_json::array();
  for (const auto& k : c.witnesses)
    w.push_back({{"kernel_vector", k.kernel_vector.to_string()}, {"image", k.image.to_string()}});
  j["witnesses"] = std::move(w);
  return j;
}

std::string factor_line(const SquarefreeCertificate& c) {
  std::ostringstream os;
  bool first = true;
  for (const auto& f : c.found_factors) {
    os << (first ? "" : " * ") << f.prime;
    if (f.exponent > 1) os << '^' << f.exponent;
    if (!f.proven_prime) os << " (prp)";
    first = false;
  }
  if (c.residual != 1) {
    os << (first ? "" : " * ") << "[" << c.residual << ": " << to_string(c.residual_class) << "]";
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

std::string graph_line(const Graph& g, const Provenance& where) {
  std::ostringstream os;
  os << where.source << ':' << where.record << "  n=" << g.order() << "  graph6=" << encode_graph6(g);
  return os.str();
}

}  // namespace

std::string snf_summary(std::span<const BigInt> diag) {
  std::ostringstream os;
  if (diag.empty()) return "";
  const std::size_t last = diag.size() - 1;
  bool first = true;
  auto sep = [&] {
    if (!first) os << ", ";
    first = false;
  };
  for (std::size_t i = 0; i < last;) {
    std::size_t j = i;
    while (j < last && diag[j] == diag[i]) ++j;
    if (j - i >= 3) {
      sep();
      os << diag[i] << "×" << (j - i);
    } else {
      for (std::size_t k = i; k < j; ++k) sep(), os << diag[k];
    }
    i = j;
  }
  sep();
  if (diag[last] == 0) {
    os << 0;
  } else {
    const Valuation2 v = valuation2(diag[last]);
    if (v.odd_part > 1) {
      if (v.alpha > 0) os << (BigInt(1) << v.alpha);
      os << 'b';
    } else {
      os << diag[last];
    }
  }
  return os.str();
}

ordered_json verdict_json(const DgsVerdict& v, const Graph& g, const Provenance& where, std::uint64_t seed) {
  ordered_json j = header(kVerdictSchema, seed);
  put_graph(j, g, where);
  j["kind"] = to_string(v.kind);
  j["fn_clause"] = to_string(v.fn_clause);
  j["extended_clause"] = to_string(v.extended_clause);
  j["detail"] = v.detail;
  const Evidence& e = v.evidence;
  ordered_json ev;
  ev["det_w"] = to_decimal(e.det_w);
  if (e.valuation)
    ev["valuation"] = {{"alpha", e.valuation->alpha},
                       {"odd_part", to_decimal(e.valuation->odd_part)},
                       {"sign", e.valuation->sign}};
  else
    ev["valuation"] = nullptr;
  ev["square_free"] = e.squarefree ? certificate_json(*e.squarefree) : ordered_json(nullptr);
  ev["rank2_w"] = e.rank2_w ? ordered_json(*e.rank2_w) : ordered_json(nullptr);
  if (e.snf_diag) {
    ev["snf_diag"] = decimal_array(*e.snf_diag);
    ev["snf_summary"] = snf_summary(*e.snf_diag);
  } else {
    ev["snf_diag"] = nullptr;
    ev["snf_summary"] = nullptr;
  }
  if (e.snf_shape)
    ev["snf_shape"] = {{"leading_ones", e.snf_shape->leading_ones},
                       {"two_exponents", e.snf_shape->two_exponents},
                       {"b", to_decimal(e.snf_shape->b)},
                       {"matches", e.snf_shape->matches}};
  else
    ev["snf_shape"] = nullptr;
  ordered_json cont = ordered_json::array();
  for (const auto& c : e.containment) cont.push_back(containment_json(c));
  ev["containment"] = std::move(cont);
  j["evidence"] = std::move(ev);
  return j;
}

std::string verdict_human(const DgsVerdict& v, const Graph& g, const Provenance& where, std::uint64_t seed) {
  std::ostringstream os;
  const Evidence& e = v.evidence;
  const int n = g.order();
  os << graph_line(g, where) << "  seed=" << seed << '\n';
  os << "  verdict      " << to_string(v.kind);
  if (!v.detail.empty()) os << " (" << v.detail << ")";
  os << '\n';
  os << "  fn clause    " << to_string(v.fn_clause) << "   extended clause " << to_string(v.extended_clause) << '\n';
  os << "  det(W)       " << e.det_w << '\n';
  if (e.valuation) {
    os << "  alpha        " << e.valuation->alpha << "  (floor(n/2) = " << n / 2 << ")\n";
    os << "  b            " << e.valuation->odd_part << '\n';
  }
  if (e.squarefree)
    os << "  factors of b " << factor_line(*e.squarefree) << "  [" << to_string(e.squarefree->status) << "]\n";
  if (e.rank2_w) os << "  rank2(W)     " << *e.rank2_w << "  (ceil(n/2) = " << (n + 1) / 2 << ")\n";
  if (e.snf_diag) {
    os << "  SNF(W)       " << snf_summary(*e.snf_diag);
    if (e.snf_shape) os << "  [shape " << (e.snf_shape->matches ? "matches" : "does not match") << "]";
    os << '\n';
  }
  for (const auto& c : e.containment) {
    os << "  containment  " << c.variant << ": half-Gram rank2 " << c.half_gram_rank2 << ", kernel dim "
       << c.witnesses.size() << ", " << (c.holds ? "holds" : "fails") << '\n';
    for (const auto& w : c.witnesses)
      os << "    v=" << w.kernel_vector.to_string() << "  Wv=" << w.image.to_string() << '\n';
  }
  return os.str();
}

ordered_json snf_json(const std::vector<BigInt>& diag, const Graph& g, const Provenance& where,
                      std::uint64_t seed) {
  ordered_json j = header(kSnfSchema, seed);
  put_graph(j, g, where);
  j["diag"] = decimal_array(diag);
  j["summary"] = snf_summary(diag);
  j["b"] = diag.empty() || diag.back() == 0 ? ordered_json(nullptr)
                                            : ordered_json(to_decimal(valuation2(diag.back()).odd_part));
  return j;
}

std::string snf_human(const std::vector<BigInt>& diag, const Graph& g, const Provenance& where,
                      std::uint64_t seed) {
  std::ostringstream os;
  os << graph_line(g, where) << "  seed=" << seed << '\n';
  os << snf_summary(diag) << '\n';
  if (!diag.empty() && diag.back() != 0) {
    const Valuation2 v = valuation2(diag.back());
    if (v.odd_part > 1) os << "b = " << v.odd_part << '\n';
  }
  return os.str();
}

ordered_json survey_json(const std::vector<SurveyRow>& rows, std::uint64_t seed, bool timing) {
  ordered_json j = header(kSurveySchema, seed);
  ordered_json a = ordered_json::array();
  for (const auto& r : rows)
    a.push_back({{"n", r.n},
                 {"samples", r.samples},
                 {"count_fn", r.count_fn},
                 {"count_unknown", r.count_unknown},
                 {"fraction", r.fraction},
                 {"seed", r.seed},
                 {"elapsed_ms", timing ? static_cast<std::uint64_t>(r.elapsed_ms + 0.5) : 0}});
  j["rows"] = std::move(a);
  return j;
}

std::string survey_human(const std::vector<SurveyRow>& rows, std::uint64_t seed, bool timing) {
  std::ostringstream os;
  os << "seed " << seed << '\n';
  os << "   n  samples  in F_n  unknown  fraction  elapsed_ms\n";
  for (const auto& r : rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%4d  %7llu  %6llu  %7llu  %8.3f  %10llu\n", r.n,
                  static_cast<unsigned long long>(r.samples), static_cast<unsigned long long>(r.count_fn),
                  static_cast<unsigned long long>(r.count_unknown), r.fraction,
                  timing ? static_cast<unsigned long long>(r.elapsed_ms + 0.5) : 0ULL);
    os << buf;
  }
  return os.str();
}

ordered_json oracle_json(const OracleReport& r) {
  ordered_json j = header(kOracleSchema, r.seed);
  j["n"] = r.n;
  j["labeled"] = r.labeled_graphs;
  j["iso_classes"] = r.isomorphism_classes;
  j["key_classes"] = r.key_classes;
  j["non_singleton"] = r.non_singleton;
  j["dgs_certified"] = r.certified_dgs;
  j["not_controllable"] = r.not_controllable;
  j["inconclusive"] = r.inconclusive;
  j["unknown"] = r.unknown;
  j["q_checked"] = r.q_checked;
  j["q_failures"] = r.q_failures;
  j["violations"] = r.soundness_violations;
  ordered_json classes = ordered_json::array();
  for (const auto& c : r.non_singleton_classes)
    classes.push_back({{"index", c.index}, {"members", c.graph6}, {"verdicts", c.verdicts}});
  j["classes"] = std::move(classes);
  return j;
}

ordered_json mate_json(const std::vector<GmMate>& mates, const Graph& g, const Provenance& where,
                       std::uint64_t seed) {
  ordered_json j = header(kMateSchema, seed);
  put_graph(j, g, where);
  ordered_json a = ordered_json::array();
  for (const auto& m : mates) {
    ordered_json x;
    x["cell"] = m.partition.cell;
    x["mate"] = encode_graph6(m.mate);
    x["isomorphic"] = m.isomorphic;
    x["keys_equal"] = m.keys_equal;
    if (m.q) {
      const auto& q = *m.q;
      ordered_json qj;
      qj["level"] = to_decimal(q.q.level);
      qj["level_primes"] = decimal_array(m.level_primes.primes);
      qj["level_primes_complete"] = m.level_primes.complete;
      qj["orthogonal"] = q.orthogonal;
      qj["fixes_ones"] = q.fixes_ones;
      qj["conjugates"] = q.conjugates;
      qj["walk_relation"] = q.walk_relation;
      qj["d_n"] = to_decimal(q.d_n);
      qj["level_divides_d_n"] = q.level_divides_d_n;
      qj["matches_switching_matrix"] = m.matches_switching_matrix;
      ordered_json scaled = ordered_json::array();
      const BigIntMatrix s = q.q.scaled();
      for (Index r = 0; r < s.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (Index c = 0; c < s.cols(); ++c) row.push_back(to_decimal(s(r, c)));
        scaled.push_back(std::move(row));
      }
      qj["scaled_q"] = std::move(scaled);
      x["q"] = std::move(qj);
    } else {
      x["q"] = nullptr;
    }
    a.push_back(std::move(x));
  }
  j["mates"] = std::move(a);
  return j;
}

std::string mate_human(const std::vector<GmMate>& mates, const Graph& g, const Provenance& where,
                       std::uint64_t seed) {
  std::ostringstream os;
  os << graph_line(g, where) << "  seed=" << seed << '\n';
  if (mates.empty()) os << "  no GM partition with the searched cell sizes\n";
  for (const auto& m : mates) {
    os << "  cell {";
    for (std::size_t i = 0; i < m.partition.cell.size(); ++i) os << (i ? "," : "") << m.partition.cell[i];
    os << "}  mate " << encode_graph6(m.mate) << (m.isomorphic ? "  isomorphic" : "  non-isomorphic")
       << (m.keys_equal ? "  keys equal" : "  KEYS DIFFER") << '\n';
    if (!m.q) {
      os << "    Q: original graph is not controllable\n";
      continue;
    }
    const auto& q = *m.q;
    os << "    Q: level " << q.q.level << "  primes {";
    for (std::size_t i = 0; i < m.level_primes.primes.size(); ++i) os << (i ? "," : "") << m.level_primes.primes[i];
    os << "}  Q^TQ=I " << (q.orthogonal ? "yes" : "no") << "  Qe=e " << (q.fixes_ones ? "yes" : "no")
       << "  Q^TAQ=A' " << (q.conjugates ? "yes" : "no") << "  Q^TW=W' " << (q.walk_relation ? "yes" : "no") << '\n';
    os << "    d_n " << q.d_n << "  level | d_n " << (q.level_divides_d_n ? "yes" : "no")
       << "  switching matrix " << (m.matches_switching_matrix ? "yes" : "no") << '\n';
  }
  return os.str();
}

}  // namespace dgs
