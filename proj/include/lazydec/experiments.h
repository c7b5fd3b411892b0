#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "lazydec/hierarchical.h"
#include "lazydec/noise_circuit.h"
#include "lazydec/resource_model.h"
#include "lazydec/statistics.h"

namespace lazydec {

enum class LogicalMode {
  PerfectMeasurement2D,  // independent Z errors on data qubits, one noiseless syndrome round
  CircuitLevelWindow,    // d noisy rounds plus one noiseless closing round, rotated code
};

/// Outcome of one Monte Carlo trial.
struct TrialResult {
  std::int64_t index = 0;
  bool lazy_ran = false;
  LazyStatus lazy_status = LazyStatus::Success;
  bool used_fallback = false;
  int logical_failure = -1;  // -1 when not evaluated
  double wall_time = 0.0;    // seconds in the decode call
  std::size_t defects = 0;
};

/// Lazy failure probability of one basis over a d-round window of the rotated code under
/// circuit-level noise. Instances are shared read-only; call make_worker() per thread.
class PFailExperiment {
 public:
  PFailExperiment(double p, int d, std::uint64_t seed);

  class Worker {
   public:
    explicit Worker(const PFailExperiment& exp);
    TrialResult run(std::int64_t index);

   private:
    const PFailExperiment* exp_;
    LazyDecoder lazy_;
    std::vector<FaultEvent> faults_;
  };

  const DecodingGraph& graph() const { return graph_; }
  int distance() const { return d_; }

 private:
  double p_;
  int d_;
  std::uint64_t seed_;
  CodeLayout layout_;
  CircuitSchedule schedule_;
  DecodingGraph graph_;
  FaultSampler sampler_;
};

/// Logical failure rate of a decoder kind.
class LogicalExperiment {
 public:
  LogicalExperiment(DecoderKind kind, double p, int d, LogicalMode mode, CodeKind code, std::uint64_t seed);

  class Worker {
   public:
    explicit Worker(const LogicalExperiment& exp);
    TrialResult run(std::int64_t index);

   private:
    const LogicalExperiment* exp_;
    HierarchicalDecoder decoder_;
    std::vector<FaultEvent> faults_;
    std::vector<QubitId> errors_;
    std::vector<std::uint8_t> residual_;
  };

  const DecodingGraph& graph() const { return graph_; }
  const CodeLayout& layout() const { return layout_; }

 private:
  DecoderKind kind_;
  double p_;
  int d_;
  LogicalMode mode_;
  std::uint64_t seed_;
  CodeLayout layout_;
  CircuitSchedule schedule_;
  DecodingGraph graph_;
  std::unique_ptr<FaultSampler> sampler_;
};

struct PFailEstimate {
  Estimate estimate;
  std::int64_t too_many_ambiguous = 0;
  std::int64_t residual_syndrome = 0;
  double mean_defects = 0.0;
};

PFailEstimate estimate_p_fail(double p, int d, std::int64_t trials, std::uint64_t seed, int workers = 1);

struct LogicalEstimate {
  Estimate estimate;
  std::int64_t fallbacks = 0;  // trials where the full decoder ran after the lazy stage failed
  std::int64_t lazy_failures = 0;
};

/// For DecoderKind::Lazy a lazy failure counts as a logical failure, since no correction exists.
LogicalEstimate estimate_logical_error(DecoderKind kind, double p, int d, std::int64_t trials,
                                       std::uint64_t seed, LogicalMode mode,
                                       CodeKind code = CodeKind::Toric2D, int workers = 1);

struct KindTiming {
  DecoderKind kind = DecoderKind::Lazy;
  TimingSummary timing;
  std::int64_t fallbacks = 0;
};

struct BenchmarkResult {
  double p = 0.0;
  int d = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<KindTiming> kinds;
};

/// Per-call decode times on the toric code with perfect measurements. Every kind decodes the same
/// instance before the next one is drawn. Runs serially.
BenchmarkResult benchmark_runtime(std::span<const DecoderKind> kinds, double p, int d,
                                  std::int64_t trials, std::uint64_t seed);

struct BandwidthPoint {
  double p = 0.0;
  int d = 0;
  Estimate p_fail;
  double bw_without = 0.0;  // bits per second per logical qubit
  double bw_with = 0.0;
  double reduction = 0.0;   // bw_without / bw_with (infinite when nothing fails)
  double reduction_lower = 0.0;  // same ratio at the upper end of the p_fail interval
};

std::vector<BandwidthPoint> bandwidth_curve(std::span<const double> p_list, std::span<const int> d_list,
                                            std::int64_t trials, std::uint64_t seed, double tau = 1e-6,
                                            int workers = 1);

struct TableRow {
  RequirementReport report;
  Estimate p_fail;
};

/// One row per (p, K). p_fail is measured once per p at the selected distance; a censored
/// estimate is provisioned at its rule-of-three upper bound.
std::vector<TableRow> reproduce_table(double p_target, std::span<const double> p_list,
                                      std::span<const std::int64_t> K_list, std::int64_t trials,
                                      std::uint64_t seed, double tau = 1e-6, int workers = 1,
                                      MCountMethod method = MCountMethod::kExactScan,
                                      BandwidthConvention convention = BandwidthConvention::kPerBasisTask);

/// p_fail value used for provisioning from a measured estimate.
double provisioning_p_fail(const Estimate& e);

}  // namespace lazydec
