#include "lazydec/resource_model.h"

#include <cmath>
#include <limits>

namespace lazydec {

namespace {

void check_distance(int d) {
  if (d < 3 || d % 2 == 0) throw std::invalid_argument("distance must be odd and >= 3");
}

void check_counts(double p_fail, std::int64_t K, double p_L) {
  if (!(p_fail >= 0.0 && p_fail <= 1.0)) throw std::invalid_argument("p_fail must lie in [0, 1]");
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (!(p_L > 0.0 && p_L < 1.0)) throw std::invalid_argument("p_L must lie in (0, 1)");
}

}  // namespace

double logical_error_rate(double p, int d) {
  check_distance(d);
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  return 0.1 * std::pow(100.0 * p, (d + 1) / 2);
}

double log10_logical_error_rate(double p, int d) {
  check_distance(d);
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  return -1.0 + ((d + 1) / 2) * std::log10(100.0 * p);
}

int select_distance(double p, double p_target) {
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  if (!(p_target > 0.0 && p_target < 1.0)) throw std::invalid_argument("p_target must lie in (0, 1)");
  if (p >= 1e-2) throw InfeasibleError("physical error rate at or above threshold; no distance suffices");
  const double log_target = std::log10(p_target);
  for (int d = 3;; d += 2) {
    // The double evaluation decides; the log form only guards against underflow to zero.
    const double log_pl = log10_logical_error_rate(p, d);
    if (log_pl < -300.0) {
      if (log_pl <= log_target) return d;
      continue;
    }
    if (logical_error_rate(p, d) <= p_target) return d;
    if (d > 1000001) throw InfeasibleError("no distance found");
  }
}

double bandwidth_per_qubit(int d, double tau) {
  check_distance(d);
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  return (static_cast<double>(d) * d - 1.0) / tau;
}

double bandwidth_per_task(int d, double tau, BandwidthConvention convention) {
  const double bw = bandwidth_per_qubit(d, tau);
  return convention == BandwidthConvention::kPerBasisTask ? bw / 2.0 : bw;
}

std::int64_t max_concurrent_failures(double p_fail, std::int64_t K, double p_L) {
  check_counts(p_fail, K, p_L);
  if (p_fail == 0.0) return 0;
  const std::int64_t n = 2 * K;
  const double log_p = std::log(p_fail);
  const double log_target = std::log(p_L);
  const double lg_n = std::lgamma(static_cast<double>(n) + 1.0);
  for (std::int64_t M = 0; M < n; ++M) {
    const double m1 = static_cast<double>(M + 1);
    const double log_binom = lg_n - std::lgamma(m1 + 1.0) - std::lgamma(static_cast<double>(n) - m1 + 1.0);
    if (log_binom + m1 * log_p < log_target) return M;
  }
  return n;
}

double binary_kl(double a, double p) {
  auto term = [](double x, double y) {
    if (x == 0.0) return 0.0;
    if (y == 0.0) return std::numeric_limits<double>::infinity();
    return x * std::log(x / y);
  };
  return term(a, p) + term(1.0 - a, 1.0 - p);
}

std::int64_t chernoff_upper_bound_M(double p_fail, std::int64_t K, double p_L) {
  check_counts(p_fail, K, p_L);
  if (p_fail == 0.0) return 0;
  const std::int64_t n = 2 * K;
  const double needed = -std::log(p_L);
  for (std::int64_t M = 0; M < n; ++M) {
    const double a = static_cast<double>(M + 1) / static_cast<double>(n);
    if (a <= p_fail) continue;
    if (static_cast<double>(n) * binary_kl(a, p_fail) > needed) return M;
  }
  return n;
}

RequirementReport requirement_report(const SystemParams& params) {
  if (!(params.tau > 0.0)) throw std::invalid_argument("tau must be positive");
  RequirementReport r;
  r.p = params.p;
  r.p_target = params.p_target;
  r.K = params.K;
  r.p_fail = params.p_fail;
  r.d = select_distance(params.p, params.p_target);
  r.p_L = logical_error_rate(params.p, r.d);
  r.M = params.method == MCountMethod::kExactScan ? max_concurrent_failures(params.p_fail, params.K, r.p_L)
                                                  : chernoff_upper_bound_M(params.p_fail, params.K, r.p_L);
  r.bw_required = static_cast<double>(r.M) * bandwidth_per_task(r.d, params.tau, params.convention);
  r.bw_no_lazy = static_cast<double>(params.K) * bandwidth_per_qubit(r.d, params.tau);
  r.dec_units_lazy = r.M;
  r.dec_units_naive = 2 * params.K;
  r.savings_fraction = 1.0 - static_cast<double>(r.M) / static_cast<double>(r.dec_units_naive);
  return r;
}

}  // namespace lazydec
