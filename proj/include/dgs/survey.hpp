#pragma once

// Fraction of G(n, 1/2) samples that pass check_fn.

#include "dgs/arithmetic.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dgs {

struct SurveyRow {
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t count_fn = 0;
  /// FactorizationUnknown verdicts; never counted as members.
  std::uint64_t count_unknown = 0;
  double fraction = 0.0;  // count_fn / samples
  std::uint64_t seed = 0;
  double elapsed_ms = 0.0;
};

/// Sample i at order n is random_gnp_half(n, derive_sample_seed(seed, n, i)),
/// so the counts depend only on (sizes, samples, seed, budget). `shards`
/// worker threads share the samples of each order. Throws
/// std::invalid_argument for samples == 0 or an order < 1.
std::vector<SurveyRow> run_survey(const std::vector<int>& sizes, std::uint64_t samples, std::uint64_t seed,
                                  const FactorBudget& budget = {}, unsigned shards = 1);

inline constexpr const char* kSurveyCsvHeader = "n,samples,count_fn,count_unknown,fraction,seed,elapsed_ms";

/// One CSV line (no newline). Fraction has six decimals, elapsed_ms is an
/// integer; with `timing` false it is written as 0.
std::string survey_csv_line(const SurveyRow& row, bool timing = true);

}  // namespace dgs
