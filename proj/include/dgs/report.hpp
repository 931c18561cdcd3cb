#pragma once

// Serialization of verdicts, SNF summaries, survey rows and mate reports.
// Every JSON document carries a "schema" field "dgs-<kind>/<version>" and
// the run seed; big integers are decimal strings.

#include "dgs/cospectral_oracle.hpp"
#include "dgs/criterion.hpp"
#include "dgs/survey.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dgs {

inline constexpr const char* kVerdictSchema = "dgs-verdict/1";
inline constexpr const char* kSnfSchema = "dgs-snf/1";
inline constexpr const char* kSurveySchema = "dgs-survey/1";
inline constexpr const char* kOracleSchema = "dgs-oracle/1";
inline constexpr const char* kMateSchema = "dgs-mate/1";

/// Where a graph came from: file name and 1-based record (line) number.
struct Provenance {
  std::string source;
  std::size_t record = 0;
};

/// Run-length summary of an SNF diagonal, e.g. "1×10, 2×7, 4, 4, 4b".
/// Runs of three or more equal entries are written value×count. When the
/// last entry has an odd part b > 1 it is written as its 2-part followed
/// by "b".
std::string snf_summary(std::span<const BigInt> diag);

nlohmann::ordered_json verdict_json(const DgsVerdict& v, const Graph& g, const Provenance& where,
                                    std::uint64_t seed);
std::string verdict_human(const DgsVerdict& v, const Graph& g, const Provenance& where, std::uint64_t seed);

nlohmann::ordered_json snf_json(const std::vector<BigInt>& diag, const Graph& g, const Provenance& where,
                                std::uint64_t seed);
std::string snf_human(const std::vector<BigInt>& diag, const Graph& g, const Provenance& where,
                      std::uint64_t seed);

nlohmann::ordered_json survey_json(const std::vector<SurveyRow>& rows, std::uint64_t seed, bool timing);
std::string survey_human(const std::vector<SurveyRow>& rows, std::uint64_t seed, bool timing);

nlohmann::ordered_json oracle_json(const OracleReport& r);

nlohmann::ordered_json mate_json(const std::vector<GmMate>& mates, const Graph& g, const Provenance& where,
                                 std::uint64_t seed);
std::string mate_human(const std::vector<GmMate>& mates, const Graph& g, const Provenance& where,
                       std::uint64_t seed);

}  // namespace dgs
