#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "lazydec/experiments.h"
#include "lazydec/report_io.h"

using namespace lazydec;

namespace {

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Wilson, ContainsPointAndMatchesFormula) {
  for (std::int64_t n : {1, 10, 1000, 1000000}) {
    for (std::int64_t k : {std::int64_t{0}, std::int64_t{1}, n / 3, n / 2, n}) {
      const Estimate e = wilson_estimate(k, n, 7);
      EXPECT_LE(e.lower, e.point);
      EXPECT_GE(e.upper, e.point);
      EXPECT_GE(e.lower, 0.0);
      EXPECT_LE(e.upper, 1.0);
      EXPECT_EQ(e.seed, 7u);
    }
  }
  // 20 of 100 at z = 1.96: textbook interval [0.1333, 0.2888].
  const Estimate e = wilson_estimate(20, 100);
  EXPECT_NEAR(e.lower, 0.13333, 2e-4);
  EXPECT_NEAR(e.upper, 0.28883, 2e-4);
  EXPECT_THROW(wilson_estimate(1, 0), std::invalid_argument);
  EXPECT_THROW(wilson_estimate(5, 4), std::invalid_argument);
}

TEST(Wilson, WidthShrinksWithTrials) {
  double prev = 1.0;
  for (std::int64_t n = 100; n <= 10000000; n *= 10) {
    const Estimate e = wilson_estimate(n / 10, n);
    const double w = e.upper - e.lower;
    EXPECT_LT(w, prev);
    if (n >= 10000) EXPECT_NEAR(w * std::sqrt(static_cast<double>(n)), 2 * kZ95 * std::sqrt(0.09), 0.02);
    prev = w;
  }
}

TEST(Wilson, CensoredUsesRuleOfThree) {
  const Estimate e = wilson_estimate(0, 1000);
  EXPECT_TRUE(e.censored);
  EXPECT_EQ(e.point, 0.0);
  EXPECT_DOUBLE_EQ(e.upper, 3e-3);
  EXPECT_DOUBLE_EQ(provisioning_p_fail(e), 3e-3);
  EXPECT_DOUBLE_EQ(wilson_estimate(0, 2).upper, 1.0);
  const Estimate f = wilson_estimate(4, 1000);
  EXPECT_FALSE(f.censored);
  EXPECT_DOUBLE_EQ(provisioning_p_fail(f), 4e-3);
}

TEST(Wilson, Overlap) {
  EXPECT_TRUE(intervals_overlap(wilson_estimate(10, 1000), wilson_estimate(14, 1000)));
  EXPECT_FALSE(intervals_overlap(wilson_estimate(10, 100000), wilson_estimate(100, 100000)));
}

TEST(Timings, Summary) {
  std::vector<double> v;
  for (int i = 100; i >= 1; --i) v.push_back(i);
  const TimingSummary s = summarize_timings(v);
  EXPECT_DOUBLE_EQ(s.mean, 50.5);
  EXPECT_DOUBLE_EQ(s.p99, 99.0);
  EXPECT_DOUBLE_EQ(s.max, 100.0);
  EXPECT_EQ(s.samples, 100);
  EXPECT_EQ(summarize_timings({}).samples, 0);
  EXPECT_DOUBLE_EQ(summarize_timings({3.0}).p99, 3.0);
}

TEST(PFail, ZeroNoise) {
  const PFailEstimate e = estimate_p_fail(0.0, 5, 500, 1);
  EXPECT_EQ(e.estimate.events, 0);
  EXPECT_EQ(e.estimate.point, 0.0);
  EXPECT_TRUE(e.estimate.censored);
  EXPECT_EQ(e.mean_defects, 0.0);
}

TEST(PFail, WorkerCountDoesNotMatter) {
  const PFailEstimate a = estimate_p_fail(2e-3, 7, 20000, 99, 1);
  const PFailEstimate b = estimate_p_fail(2e-3, 7, 20000, 99, 2);
  const PFailEstimate c = estimate_p_fail(2e-3, 7, 20000, 99, 3);
  for (const PFailEstimate* x : {&b, &c}) {
    EXPECT_EQ(a.estimate.events, x->estimate.events);
    EXPECT_EQ(a.too_many_ambiguous, x->too_many_ambiguous);
    EXPECT_EQ(a.residual_syndrome, x->residual_syndrome);
    EXPECT_DOUBLE_EQ(a.mean_defects, x->mean_defects);
  }
  EXPECT_EQ(a.too_many_ambiguous + a.residual_syndrome, a.estimate.events);
  EXPECT_GT(a.estimate.events, 0);
  const PFailEstimate other = estimate_p_fail(2e-3, 7, 20000, 100, 1);
  EXPECT_NE(a.mean_defects, other.mean_defects);
}

TEST(PFail, IncreasesWithDistance) {
  const PFailEstimate d5 = estimate_p_fail(1e-4, 5, 1000000, 3);
  const PFailEstimate d9 = estimate_p_fail(1e-4, 9, 300000, 3);
  const PFailEstimate d15 = estimate_p_fail(1e-4, 15, 200000, 3);
  EXPECT_LT(d5.estimate.upper, d9.estimate.lower);
  EXPECT_LT(d9.estimate.upper, d15.estimate.lower);
  EXPECT_LT(d5.mean_defects, d9.mean_defects);
}

TEST(Logical, ZeroNoise) {
  for (DecoderKind k : {DecoderKind::Lazy, DecoderKind::UnionFind, DecoderKind::LazyThenMwpm}) {
    EXPECT_EQ(estimate_logical_error(k, 0.0, 5, 300, 1, LogicalMode::PerfectMeasurement2D).estimate.events, 0);
    EXPECT_EQ(estimate_logical_error(k, 0.0, 5, 300, 1, LogicalMode::CircuitLevelWindow,
                                     CodeKind::RotatedSurface)
                  .estimate.events,
              0);
  }
}

TEST(Logical, WorkerCountDoesNotMatter) {
  for (LogicalMode mode : {LogicalMode::PerfectMeasurement2D, LogicalMode::CircuitLevelWindow}) {
    const CodeKind code = mode == LogicalMode::CircuitLevelWindow ? CodeKind::RotatedSurface : CodeKind::Toric2D;
    const LogicalEstimate a = estimate_logical_error(DecoderKind::LazyThenUnionFind, 0.02, 5, 5000, 4, mode, code, 1);
    const LogicalEstimate b = estimate_logical_error(DecoderKind::LazyThenUnionFind, 0.02, 5, 5000, 4, mode, code, 2);
    EXPECT_EQ(a.estimate.events, b.estimate.events);
    EXPECT_EQ(a.fallbacks, b.fallbacks);
    EXPECT_EQ(a.lazy_failures, b.lazy_failures);
    EXPECT_GT(a.fallbacks, 0);
  }
}

TEST(Logical, LoneLazyFailureCountsAsLogical) {
  const LogicalEstimate lazy =
      estimate_logical_error(DecoderKind::Lazy, 0.02, 7, 5000, 8, LogicalMode::PerfectMeasurement2D);
  EXPECT_GE(lazy.estimate.events, lazy.lazy_failures);
  EXPECT_GT(lazy.lazy_failures, 0);
  EXPECT_EQ(lazy.fallbacks, 0);
}

TEST(Logical, UnionFindImprovesWithDistance) {
  // At p = 1e-3 the d = 9 rate is far below anything 1e6 trials resolve; 3e-2 keeps both rates
  // measurable while staying well under threshold.
  const LogicalEstimate d5 =
      estimate_logical_error(DecoderKind::UnionFind, 0.03, 5, 100000, 12, LogicalMode::PerfectMeasurement2D);
  const LogicalEstimate d9 =
      estimate_logical_error(DecoderKind::UnionFind, 0.03, 9, 100000, 12, LogicalMode::PerfectMeasurement2D);
  EXPECT_LT(d9.estimate.upper, d5.estimate.lower);
}

TEST(Logical, MwpmNotWorseThanUnionFind) {
  const LogicalEstimate uf =
      estimate_logical_error(DecoderKind::UnionFind, 0.05, 7, 20000, 2, LogicalMode::PerfectMeasurement2D);
  const LogicalEstimate mw =
      estimate_logical_error(DecoderKind::Mwpm, 0.05, 7, 20000, 2, LogicalMode::PerfectMeasurement2D);
  EXPECT_LE(mw.estimate.lower, uf.estimate.upper);
}

TEST(Benchmark, ZeroNoiseNeverFallsBack) {
  const std::vector<DecoderKind> kinds{DecoderKind::Lazy, DecoderKind::LazyThenUnionFind, DecoderKind::LazyThenMwpm};
  const BenchmarkResult b = benchmark_runtime(kinds, 0.0, 8, 2000, 1);
  ASSERT_EQ(b.kinds.size(), 3u);
  for (const KindTiming& k : b.kinds) {
    EXPECT_EQ(k.fallbacks, 0);
    EXPECT_EQ(k.timing.samples, 2000);
    EXPECT_GE(k.timing.mean, 0.0);
    EXPECT_LE(k.timing.p99, k.timing.max);
  }
}

TEST(Benchmark, FallbackCountsAgreeAcrossCompositeKinds) {
  const std::vector<DecoderKind> kinds{DecoderKind::LazyThenUnionFind, DecoderKind::LazyThenMwpm};
  const BenchmarkResult b = benchmark_runtime(kinds, 1e-2, 10, 3000, 5);
  EXPECT_EQ(b.kinds[0].fallbacks, b.kinds[1].fallbacks);
  EXPECT_GT(b.kinds[0].fallbacks, 0);
  std::ostringstream csv;
  write_benchmark_csv(csv, b);
  EXPECT_EQ(count_lines(csv.str()), 3);
  EXPECT_EQ(to_json(b)["kinds"].size(), 2u);
}

TEST(BandwidthCurve, ZeroAndHighNoise) {
  const double ps[] = {0.0, 0.01};
  const int ds[] = {15};
  const auto pts = bandwidth_curve(ps, ds, 1000, 1);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0].bw_with, 0.0);
  EXPECT_DOUBLE_EQ(pts[0].bw_without, 224e6);
  EXPECT_TRUE(std::isinf(pts[0].reduction));
  EXPECT_DOUBLE_EQ(pts[0].reduction_lower, 1000.0 / 3.0);
  // At p = 1e-2, d = 15 every window fails: with-lazy equals without-lazy.
  EXPECT_EQ(pts[1].p_fail.events, 1000);
  EXPECT_DOUBLE_EQ(pts[1].bw_with, pts[1].bw_without);
  EXPECT_DOUBLE_EQ(pts[1].reduction, 1.0);

  const Json j = to_json(pts[0]);
  EXPECT_TRUE(j["reduction"].is_null());
  std::ostringstream csv;
  write_bandwidth_csv(csv, pts);
  EXPECT_EQ(count_lines(csv.str()), 3);
}

TEST(ReproduceTable, DistancesAndLayout) {
  const double ps[] = {1e-3, 1e-4, 1e-5};
  const std::int64_t ks[] = {100, 1000, 10000};
  const auto rows = reproduce_table(1e-15, ps, ks, 200, 1);
  ASSERT_EQ(rows.size(), 9u);
  const int expected[] = {29, 15, 9};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].report.d, expected[i / 3]);
    EXPECT_EQ(rows[i].report.K, ks[i % 3]);
    EXPECT_EQ(rows[i].report.p_fail, provisioning_p_fail(rows[i].p_fail));
  }
  // p_fail is measured once per p.
  EXPECT_EQ(rows[3].p_fail.events, rows[5].p_fail.events);

  std::ostringstream csv, table;
  write_requirements_csv(csv, rows);
  EXPECT_EQ(count_lines(csv.str()), 10);
  EXPECT_EQ(csv.str().substr(0, 12), "p,p_target,K");
  write_requirements_table(table, rows);
  EXPECT_NE(table.str().find("d = 29"), std::string::npos);
  EXPECT_NE(table.str().find("dec. units"), std::string::npos);
}

TEST(ReportIo, EstimateCsvAndJson) {
  const Estimate e = wilson_estimate(3, 100, 42);
  std::ostringstream os;
  write_estimate_csv(os, "x", e);
  write_estimate_csv(os, "y", e, false);
  EXPECT_EQ(count_lines(os.str()), 3);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "label,point,lower,upper,events,trials,seed,censored");
  const Json j = to_json(e);
  EXPECT_EQ(j["events"], 3);
  EXPECT_EQ(j["trials"], 100);
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["censored"], false);
}
