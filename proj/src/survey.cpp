#include "dgs/survey.hpp"

#include "dgs/criterion.hpp"
#include "dgs/graph.hpp"
#include "dgs/random.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace dgs {

std::vector<SurveyRow> run_survey(const std::vector<int>& sizes, std::uint64_t samples, std::uint64_t seed,
                                  const FactorBudget& budget, unsigned shards) {
  if (samples == 0) throw std::invalid_argument("run_survey: samples must be positive");
  for (int n : sizes)
    if (n < 1) throw std::invalid_argument("run_survey: order must be positive, got " + std::to_string(n));
  shards = std::max(1u, shards);

  std::vector<SurveyRow> rows;
  for (int n : sizes) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<VerdictKind> kinds(samples);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      for (std::uint64_t i; (i = next.fetch_add(1)) < samples;) {
        try {
          kinds[i] = check_fn(random_gnp_half(n, derive_sample_seed(seed, n, i)), budget).kind;
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = samples;
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < shards; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    SurveyRow row;
    row.n = n;
    row.samples = samples;
    row.seed = seed;
    for (auto k : kinds) {
      if (k == VerdictKind::DgsByFn) ++row.count_fn;
      if (k == VerdictKind::FactorizationUnknown) ++row.count_unknown;
    }
    row.fraction = static_cast<double>(row.count_fn) / static_cast<double>(samples);
    row.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(row);
  }
  return rows;
}

std::string survey_csv_line(const SurveyRow& row, bool timing) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d,%llu,%llu,%llu,%.6f,%llu,%llu", row.n,
                static_cast<unsigned long long>(row.samples), static_cast<unsigned long long>(row.count_fn),
                static_cast<unsigned long long>(row.count_unknown), row.fraction,
                static_cast<unsigned long long>(row.seed),
                timing ? static_cast<unsigned long long>(row.elapsed_ms + 0.5) : 0ULL);
  return buf;
}

}  // namespace dgs
