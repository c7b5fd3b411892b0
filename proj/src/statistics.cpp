#include "lazydec/statistics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lazydec {

Estimate wilson_estimate(std::int64_t events, std::int64_t trials, std::uint64_t seed, double z) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (events < 0 || events > trials) throw std::invalid_argument("events out of range");
  Estimate e;
  e.events = events;
  e.trials = trials;
  e.seed = seed;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(events) / n;
  e.point = phat;
  if (events == 0) {
    e.censored = true;
    e.lower = 0.0;
    e.upper = std::min(1.0, 3.0 / n);
    return e;
  }
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  // Rounding can leave the interval a hair off the point at k = n.
  e.lower = std::clamp(center - half, 0.0, phat);
  e.upper = std::clamp(center + half, phat, 1.0);
  return e;
}

bool intervals_overlap(const Estimate& a, const Estimate& b) {
  return a.lower <= b.upper && b.lower <= a.upper;
}

TimingSummary summarize_timings(std::vector<double> samples) {
  TimingSummary s;
  s.samples = static_cast<std::int64_t>(samples.size());
  if (samples.empty()) return s;
  s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  std::sort(samples.begin(), samples.end());
  const auto rank = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(samples.size())));
  s.p99 = samples[std::max<std::size_t>(rank, 1) - 1];
  s.max = samples.back();
  return s;
}

}  // namespace lazydec
