#include "dgs/criterion.hpp"
#include "dgs/random.hpp"
#include "dgs/survey.hpp"

#include <gtest/gtest.h>

using namespace dgs;

TEST(Survey, RejectsBadArguments) {
  EXPECT_THROW(run_survey({10}, 0, 1), std::invalid_argument);
  EXPECT_THROW(run_survey({0}, 10, 1), std::invalid_argument);
}

TEST(Survey, SingleSampleIsReproducible) {
  const auto a = run_survey({9}, 1, 42), b = run_survey({9}, 1, 42);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_TRUE(a[0].fraction == 0.0 || a[0].fraction == 1.0);
  EXPECT_EQ(a[0].count_fn, b[0].count_fn);
  EXPECT_EQ(a[0].seed, 42u);
}

TEST(Survey, CountsMatchDirectCertification) {
  const std::uint64_t seed = 7, samples = 120;
  const auto rows = run_survey({8, 11}, samples, seed);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& row : rows) {
    std::uint64_t fn = 0;
    for (std::uint64_t i = 0; i < samples; ++i)
      fn += check_fn(random_gnp_half(row.n, derive_sample_seed(seed, row.n, i))).kind == VerdictKind::DgsByFn;
    EXPECT_EQ(row.count_fn, fn);
    EXPECT_EQ(row.count_unknown, 0u);
    EXPECT_DOUBLE_EQ(row.fraction, static_cast<double>(fn) / samples);
  }
  EXPECT_EQ(rows[0].n, 8);
  EXPECT_EQ(rows[1].n, 11);
}

TEST(Survey, ShardCountDoesNotMatter) {
  const auto one = run_survey({10, 12}, 150, 3, {}, 1);
  for (unsigned shards : {2u, 8u}) {
    const auto many = run_survey({10, 12}, 150, 3, {}, shards);
    ASSERT_EQ(many.size(), one.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
      EXPECT_EQ(many[i].count_fn, one[i].count_fn);
      EXPECT_EQ(many[i].count_unknown, one[i].count_unknown);
      EXPECT_EQ(survey_csv_line(many[i], false), survey_csv_line(one[i], false));
    }
  }
}

TEST(Survey, UnknownsCountedSeparately) {
  FactorBudget tiny;
  tiny.trial_bound = 3;
  tiny.rho_iterations = 1;
  tiny.ecm_curves = 0;
  const auto rows = run_survey({16}, 100, 9, tiny);
  const auto full = run_survey({16}, 100, 9);
  EXPECT_GT(rows[0].count_unknown, 0u);
  EXPECT_LE(rows[0].count_fn, full[0].count_fn);
  EXPECT_LE(rows[0].count_fn + rows[0].count_unknown, 100u);
}

TEST(Survey, CsvLine) {
  SurveyRow r;
  r.n = 10;
  r.samples = 1000;
  r.count_fn = 211;
  r.count_unknown = 2;
  r.fraction = 0.211;
  r.seed = 5;
  r.elapsed_ms = 12.7;
  EXPECT_EQ(survey_csv_line(r), "10,1000,211,2,0.211000,5,13");
  EXPECT_EQ(survey_csv_line(r, false), "10,1000,211,2,0.211000,5,0");
  EXPECT_STREQ(kSurveyCsvHeader, "n,samples,count_fn,count_unknown,fraction,seed,elapsed_ms");
}
