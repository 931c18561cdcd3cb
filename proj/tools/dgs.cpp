// dgs: command-line front end.
//
//   dgs check  --input FILE...            verdict per graph
//   dgs snf    --input FILE...            Smith form of the walk matrix
//   dgs mate   --input FILE...            GM-switching mates and Q forensics
//   dgs survey --sizes 10,20 --samples N  F_n fraction of G(n, 1/2)
//   dgs oracle --sizes 4,5                exhaustive cospectral classes
//
// Exit codes: 0 clean, 1 usage or internal error, 2 malformed input,
// 3 some verdict was FactorizationUnknown, 4 the oracle found a soundness
// violation or a Q verification failure.

#include "dgs/cospectral_oracle.hpp"
#include "dgs/criterion.hpp"
#include "dgs/exact_linalg.hpp"
#include "dgs/graph.hpp"
#include "dgs/report.hpp"
#include "dgs/survey.hpp"
#include "dgs/walk_matrix.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <iterator>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitUnknown = 3;
constexpr int kExitViolation = 4;

struct Config {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::string input_format = "auto";
  std::string output;
  std::uint64_t seed = 0;
  std::uint64_t samples = 1000;
  std::vector<int> sizes;
  unsigned long trial_bound = 1'000'000;
  std::uint64_t rho_budget = 4'000'000;
  unsigned ecm_curves = 200;
  unsigned long ecm_b1 = 11'000;
  unsigned workers = 1;
  std::string format;
  bool no_timing = false;
};

struct Record {
  dgs::Provenance where;
  dgs::Graph graph;
};

struct InputSet {
  std::vector<Record> records;
  bool parse_failed = false;
};

bool looks_like_adjacency(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool any = false;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    for (char c : line) {
      if (std::string_view("01,;{}[]\\ \t\r").find(c) == std::string_view::npos) return false;
      any = true;
    }
  }
  return any;
}

// Line number (1-based) of data row `row` in adjacency text.
std::size_t adjacency_row_line(const std::string& text, int row) {
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  int seen = -1;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line.find_first_of("01") == std::string::npos && line.find_first_not_of(",;{}[]\\ \t\r") == std::string::npos)
      continue;
    if (++seen == row) return number;
  }
  return number;
}

std::size_t offset_line(const std::string& text, std::ptrdiff_t offset) {
  if (offset < 0) return 0;
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + std::min<std::ptrdiff_t>(offset, text.size()), '\n'));
}

InputSet read_inputs(const Config& cfg) {
  InputSet set;
  for (const auto& path : cfg.inputs) {
    std::string text;
    if (path == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
      std::ifstream f(path, std::ios::binary);
      if (!f) {
        std::cerr << path << ": cannot open file\n";
        set.parse_failed = true;
        continue;
      }
      text.assign(std::istreambuf_iterator<char>(f), {});
    }
    const bool adjacency = cfg.input_format == "adjacency" || (cfg.input_format == "auto" && looks_like_adjacency(text));
    if (adjacency) {
      try {
        set.records.push_back({{path, 1}, dgs::parse_adjacency_text(text)});
      } catch (const dgs::ParseError& e) {
        const std::size_t line = e.row() >= 0 ? adjacency_row_line(text, e.row()) : offset_line(text, e.offset());
        std::cerr << path << ':' << line << ": " << e.what();
        if (e.col() >= 0) std::cerr << " (row " << e.row() + 1 << ", column " << e.col() + 1 << ")";
        std::cerr << '\n';
        set.parse_failed = true;
      }
      continue;
    }
    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      try {
        set.records.push_back({{path, number}, dgs::parse_graph6(line)});
      } catch (const dgs::ParseError& e) {
        std::cerr << path << ':' << number << ": " << e.what() << " (byte " << e.offset() << ")\n";
        set.parse_failed = true;
      }
    }
  }
  return set;
}

template <typename Body>
void for_each_parallel(std::size_t count, unsigned workers, Body body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers && t < count; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

dgs::FactorBudget budget_of(const Config& cfg) {
  dgs::FactorBudget b;
  b.trial_bound = cfg.trial_bound;
  b.rho_iterations = cfg.rho_budget;
  b.ecm_curves = cfg.ecm_curves;
  b.ecm_b1 = cfg.ecm_b1;
  return b;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

int cmd_check(const Config& cfg, std::ostream& out) {
  const InputSet in = read_inputs(cfg);
  std::vector<std::optional<dgs::DgsVerdict>> verdicts(in.records.size());
  const auto budget = budget_of(cfg);
  for_each_parallel(in.records.size(), cfg.workers,
                    [&](std::size_t i) { verdicts[i] = dgs::certify(in.records[i].graph, budget); });
  const std::string fmt = cfg.format.empty() ? "json" : cfg.format;
  bool unknown = false;
  if (fmt == "csv") out << "source,record,n,kind,fn_clause,extended_clause,det_w,alpha,rank2_w,snf,seed\n";
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const auto& v = *verdicts[i];
    const auto& r = in.records[i];
    unknown |= v.kind == dgs::VerdictKind::FactorizationUnknown;
    if (fmt == "json") {
      out << dgs::verdict_json(v, r.graph, r.where, cfg.seed).dump() << '\n';
    } else if (fmt == "csv") {
      const auto& e = v.evidence;
      out << csv_escape(r.where.source) << ',' << r.where.record << ',' << e.n << ',' << dgs::to_string(v.kind) << ','
          << dgs::to_string(v.fn_clause) << ',' << dgs::to_string(v.extended_clause) << ',' << e.det_w << ','
          << (e.valuation ? std::to_string(e.valuation->alpha) : "") << ','
          << (e.rank2_w ? std::to_string(*e.rank2_w) : "") << ','
          << csv_escape(e.snf_diag ? dgs::snf_summary(*e.snf_diag) : "") << ',' << cfg.seed << '\n';
    } else {
      out << dgs::verdict_human(v, r.graph, r.where, cfg.seed) << '\n';
    }
  }
  if (in.parse_failed) return kExitParse;
  return unknown ? kExitUnknown : kExitOk;
}

int cmd_snf(const Config& cfg, std::ostream& out) {
  const InputSet in = read_inputs(cfg);
  const std::string fmt = cfg.format.empty() ? "human" : cfg.format;
  if (fmt == "csv") out << "source,record,n,snf,b,seed\n";
  for (const auto& r : in.records) {
    std::vector<dgs::BigInt> diag;
    std::optional<dgs::Index> singular_rank;
    try {
      diag = dgs::smith_normal_form(dgs::walk_matrix(r.graph)).diag;
    } catch (const dgs::SingularMatrixError& e) {
      singular_rank = e.rank();
    }
    if (singular_rank) {
      if (fmt == "json") {
        auto j = dgs::snf_json({}, r.graph, r.where, cfg.seed);
        j["singular"] = true;
        j["rank"] = *singular_rank;
        out << j.dump() << '\n';
      } else if (fmt == "csv") {
        out << csv_escape(r.where.source) << ',' << r.where.record << ',' << r.graph.order() << ",singular,,"
            << cfg.seed << '\n';
      } else {
        out << r.where.source << ':' << r.where.record << "  n=" << r.graph.order() << "  seed=" << cfg.seed
            << "\nW is singular (rank " << *singular_rank << ")\n\n";
      }
      continue;
    }
    if (fmt == "json") {
      auto j = dgs::snf_json(diag, r.graph, r.where, cfg.seed);
      j["singular"] = false;
      out << j.dump() << '\n';
    } else if (fmt == "csv") {
      out << csv_escape(r.where.source) << ',' << r.where.record << ',' << r.graph.order() << ','
          << csv_escape(dgs::snf_summary(diag)) << ',' << dgs::valuation2(diag.back()).odd_part << ',' << cfg.seed
          << '\n';
    } else {
      out << dgs::snf_human(diag, r.graph, r.where, cfg.seed) << '\n';
    }
  }
  return in.parse_failed ? kExitParse : kExitOk;
}

int cmd_mate(const Config& cfg, std::ostream& out) {
  const InputSet in = read_inputs(cfg);
  const std::string fmt = cfg.format.empty() ? "human" : cfg.format;
  const auto budget = budget_of(cfg);
  std::vector<std::vector<dgs::GmMate>> mates(in.records.size());
  for_each_parallel(in.records.size(), cfg.workers,
                    [&](std::size_t i) { mates[i] = dgs::gm_mates(in.records[i].graph, budget); });
  if (fmt == "csv") out << "source,record,n,cell,mate,isomorphic,keys_equal,level,level_divides_d_n,seed\n";
  for (std::size_t i = 0; i < mates.size(); ++i) {
    const auto& r = in.records[i];
    if (fmt == "json") {
      out << dgs::mate_json(mates[i], r.graph, r.where, cfg.seed).dump() << '\n';
    } else if (fmt == "csv") {
      for (const auto& m : mates[i]) {
        std::string cell;
        for (int v : m.partition.cell) cell += (cell.empty() ? "" : " ") + std::to_string(v);
        out << csv_escape(r.where.source) << ',' << r.where.record << ',' << r.graph.order() << ',' << cell << ','
            << csv_escape(dgs::encode_graph6(m.mate)) << ',' << m.isomorphic << ',' << m.keys_equal << ','
            << (m.q ? m.q->q.level.get_str() : "") << ',' << (m.q ? (m.q->level_divides_d_n ? "1" : "0") : "") << ','
            << cfg.seed << '\n';
      }
    } else {
      out << dgs::mate_human(mates[i], r.graph, r.where, cfg.seed) << '\n';
    }
  }
  if (in.parse_failed) return kExitParse;
  for (std::size_t i = 0; i < mates.size(); ++i) {
    bool distinct = false;
    for (const auto& m : mates[i]) {
      if (m.q && !m.q->verified()) return kExitViolation;
      distinct = distinct || !m.isomorphic;
    }
    // A certified graph must not have a non-isomorphic mate.
    if (distinct && dgs::certify(in.records[i].graph, budget).is_dgs()) {
      std::cerr << in.records[i].where.source << ':' << in.records[i].where.record
                << ": certified graph has a non-isomorphic GM mate\n";
      return kExitViolation;
    }
  }
  return kExitOk;
}

int cmd_survey(const Config& cfg, std::ostream& out) {
  if (cfg.sizes.empty()) throw CLI::ValidationError("--sizes", "survey needs at least one order");
  const auto rows = dgs::run_survey(cfg.sizes, cfg.samples, cfg.seed, budget_of(cfg), cfg.workers);
  const std::string fmt = cfg.format.empty() ? "csv" : cfg.format;
  const bool timing = !cfg.no_timing;
  if (fmt == "json") {
    out << dgs::survey_json(rows, cfg.seed, timing).dump() << '\n';
  } else if (fmt == "csv") {
    out << dgs::kSurveyCsvHeader << '\n';
    for (const auto& r : rows) out << dgs::survey_csv_line(r, timing) << '\n';
  } else {
    out << dgs::survey_human(rows, cfg.seed, timing);
  }
  for (const auto& r : rows)
    if (r.count_unknown > 0) return kExitUnknown;
  return kExitOk;
}

int cmd_oracle(const Config& cfg, std::ostream& out) {
  if (cfg.sizes.empty()) throw CLI::ValidationError("--sizes", "oracle needs at least one order");
  const std::string fmt = cfg.format.empty() ? "human" : cfg.format;
  int code = kExitOk;
  for (int n : cfg.sizes) {
    const auto report = dgs::run_oracle(n, budget_of(cfg), cfg.workers, cfg.seed);
    if (fmt == "json")
      out << dgs::oracle_json(report).dump() << '\n';
    else
      out << dgs::format_oracle_report(report);
    if (!report.soundness_violations.empty() || report.q_failures > 0) code = kExitViolation;
    else if (report.unknown > 0 && code == kExitOk) code = kExitUnknown;
  }
  return code;
}

void add_common(CLI::App* sub, Config& cfg, bool takes_input) {
  if (takes_input) {
    sub->add_option("-i,--input", cfg.inputs, "Graph files (graph6, one record per line, or adjacency text); - for stdin")
        ->required();
    sub->add_option("--input-format", cfg.input_format, "auto, graph6 or adjacency")
        ->check(CLI::IsMember({"auto", "graph6", "adjacency"}));
  }
  sub->add_option("-o,--output", cfg.output, "Output file (default stdout)");
  sub->add_option("--seed", cfg.seed, "Seed, echoed into every report");
  sub->add_option("--trial-bound", cfg.trial_bound, "Trial division bound")
      ->envname("DGS_TRIAL_BOUND")
      ->check(CLI::PositiveNumber);
  sub->add_option("--rho-budget", cfg.rho_budget, "Total Pollard-Brent iterations per number")
      ->envname("DGS_RHO_BUDGET")
      ->check(CLI::PositiveNumber);
  sub->add_option("--ecm-curves", cfg.ecm_curves, "Total elliptic curves per number (0 disables ECM)")
      ->envname("DGS_ECM_CURVES")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--ecm-b1", cfg.ecm_b1, "ECM stage-1 bound")->envname("DGS_ECM_B1")->check(CLI::Range(100ul, 100'000'000ul));
  sub->add_option("--workers", cfg.workers, "Worker threads")->envname("DGS_WORKERS")->check(CLI::PositiveNumber);
  sub->add_option("--format", cfg.format, "json, csv or human")->check(CLI::IsMember({"json", "csv", "human"}));
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Arithmetic DGS certification of graphs via the walk matrix"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "Certify each input graph");
  add_common(check, cfg, true);
  auto* snf = app.add_subcommand("snf", "Smith normal form of each walk matrix");
  add_common(snf, cfg, true);
  auto* mate = app.add_subcommand("mate", "GM-switching mates with Q forensics");
  add_common(mate, cfg, true);
  auto* survey = app.add_subcommand("survey", "F_n fraction of random G(n, 1/2) graphs");
  add_common(survey, cfg, false);
  survey->add_option("--sizes", cfg.sizes, "Orders, comma separated")->delimiter(',')->required();
  survey->add_option("--samples", cfg.samples, "Samples per order")->check(CLI::PositiveNumber);
  survey->add_flag("--no-timing", cfg.no_timing, "Write elapsed_ms as 0 for byte-stable output");
  auto* oracle = app.add_subcommand("oracle", "Exhaustive generalized-cospectral classes for small n");
  add_common(oracle, cfg, false);
  oracle->add_option("--sizes", cfg.sizes, "Orders (1..7), comma separated")
      ->delimiter(',')
      ->required()
      ->check(CLI::Range(1, dgs::kMaxOracleOrder));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output, std::ios::binary);
    if (!file) {
      std::cerr << cfg.output << ": cannot open for writing\n";
      return kExitError;
    }
  }
  std::ostream& out = cfg.output.empty() ? std::cout : file;

  try {
    if (*check) return cmd_check(cfg, out);
    if (*snf) return cmd_snf(cfg, out);
    if (*mate) return cmd_mate(cfg, out);
    if (*survey) return cmd_survey(cfg, out);
    if (*oracle) return cmd_oracle(cfg, out);
  } catch (const CLI::Error& e) {
    std::cerr << "dgs: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "dgs: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
