#pragma once

#include <cstdint>
#include <vector>

namespace lazydec {

/// Rate estimate with a 95% interval. With zero events the estimate is censored and the upper
/// end is the rule-of-three bound 3 / trials.
struct Estimate {
  double point = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  std::int64_t events = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  bool censored = false;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for `events` successes out of `trials`.
Estimate wilson_estimate(std::int64_t events, std::int64_t trials, std::uint64_t seed = 0, double z = kZ95);

bool intervals_overlap(const Estimate& a, const Estimate& b);

struct TimingSummary {
  double mean = 0.0;
  double p99 = 0.0;
  double max = 0.0;
  std::int64_t samples = 0;
};

/// Mean, 99th percentile (nearest rank) and maximum of `samples`.
TimingSummary summarize_timings(std::vector<double> samples);

}  // namespace lazydec
