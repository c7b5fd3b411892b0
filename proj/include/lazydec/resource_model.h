#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lazydec {

/// Raised when no code distance reaches the target (physical rate at or above threshold).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Heuristic logical error rate per round: 0.1 (100 p)^((d + 1) / 2).
double logical_error_rate(double p, int d);
/// Same quantity in log10, finite far below the double range.
double log10_logical_error_rate(double p, int d);

/// Smallest odd d >= 3 whose heuristic logical rate does not exceed p_target.
/// Throws InfeasibleError for p >= 1e-2.
int select_distance(double p, double p_target);

/// Syndrome bandwidth of one logical qubit, both bases: (d^2 - 1) / tau bits per second.
double bandwidth_per_qubit(int d, double tau);

enum class BandwidthConvention {
  kPerBasisTask,     // a decoding task carries one basis: (d^2 - 1) / (2 tau)
  kEquationLiteral,  // a decoding task carries the whole qubit: (d^2 - 1) / tau
};

double bandwidth_per_task(int d, double tau, BandwidthConvention convention);

/// Smallest M >= 0 with C(2K, M + 1) p_fail^(M + 1) < p_L, capped at 2K.
std::int64_t max_concurrent_failures(double p_fail, std::int64_t K, double p_L);

/// Smallest M with a = (M + 1) / (2K) > p_fail and exp(-2K D(a || p_fail)) < p_L, where D is the
/// binary relative entropy; capped at 2K.
std::int64_t chernoff_upper_bound_M(double p_fail, std::int64_t K, double p_L);

/// Binary relative entropy D(a || p) in nats.
double binary_kl(double a, double p);

enum class MCountMethod { kExactScan, kChernoff };

struct SystemParams {
  double p = 1e-3;
  double p_target = 1e-15;
  std::int64_t K = 100;
  double tau = 1e-6;
  double p_fail = 1.0;
  MCountMethod method = MCountMethod::kExactScan;
  BandwidthConvention convention = BandwidthConvention::kPerBasisTask;
};

struct RequirementReport {
  double p = 0.0;
  double p_target = 0.0;
  std::int64_t K = 0;
  double p_fail = 0.0;
  int d = 0;
  double p_L = 0.0;
  std::int64_t M = 0;
  double bw_required = 0.0;  // bits per second, whole machine
  double bw_no_lazy = 0.0;
  std::int64_t dec_units_lazy = 0;
  std::int64_t dec_units_naive = 0;
  double savings_fraction = 0.0;
};

RequirementReport requirement_report(const SystemParams& params);

}  // namespace lazydec
