#include "lazydec/experiments.h"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <thread>

namespace lazydec {

namespace {

struct Tally {
  std::int64_t trials = 0;
  std::int64_t events = 0;
  std::int64_t ambiguous = 0;
  std::int64_t residual = 0;
  std::int64_t fallbacks = 0;
  std::int64_t lazy_failures = 0;
  double defects = 0.0;

  void merge(const Tally& o) {
    trials += o.trials;
    events += o.events;
    ambiguous += o.ambiguous;
    residual += o.residual;
    fallbacks += o.fallbacks;
    lazy_failures += o.lazy_failures;
    defects += o.defects;
  }
};

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Trials are handed out in chunks; each thread owns its worker and tally, and the tallies are
// summed at the end, so the totals do not depend on scheduling.
template <typename Experiment, typename Fold>
Tally run_campaign(const Experiment& exp, std::int64_t trials, int workers, Fold fold) {
  constexpr std::int64_t kChunk = 1024;
  std::atomic<std::int64_t> next{0};
  std::mutex mu;
  Tally total;
  auto body = [&] {
    typename Experiment::Worker worker(exp);
    Tally local;
    while (true) {
      const std::int64_t begin = next.fetch_add(kChunk);
      if (begin >= trials) break;
      const std::int64_t end = std::min(trials, begin + kChunk);
      for (std::int64_t i = begin; i < end; ++i) {
        ++local.trials;
        fold(local, worker.run(i));
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    total.merge(local);
  };
  const int n = std::max(1, std::min<int>(resolve_workers(workers), static_cast<int>((trials + kChunk - 1) / kChunk)));
  if (n == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------------------------

PFailExperiment::PFailExperiment(double p, int d, std::uint64_t seed)
    : p_(p),
      d_(d),
      seed_(seed),
      layout_(build_rotated_surface_code(d)),
      schedule_(build_schedule(layout_)),
      graph_(build_decoding_graph(layout_, schedule_, d, NoiseParams{p, NoiseMode::CircuitLevel}, Basis::X)),
      sampler_(schedule_, d, p) {}

PFailExperiment::Worker::Worker(const PFailExperiment& exp) : exp_(&exp), lazy_(exp.graph_) {}

TrialResult PFailExperiment::Worker::run(std::int64_t index) {
  SplitMix64 rng = trial_stream(exp_->seed_, static_cast<std::uint64_t>(index));
  exp_->sampler_.sample(rng, faults_);
  const Syndrome s = faults_to_syndrome(exp_->graph_, faults_);
  const LazyOutcome out = lazy_.decode(s);
  TrialResult r;
  r.index = index;
  r.lazy_ran = true;
  r.lazy_status = out.status;
  r.defects = s.defects.size();
  return r;
}

PFailEstimate estimate_p_fail(double p, int d, std::int64_t trials, std::uint64_t seed, int workers) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const PFailExperiment exp(p, d, seed);
  const Tally t = run_campaign(exp, trials, workers, [](Tally& acc, const TrialResult& r) {
    acc.defects += static_cast<double>(r.defects);
    if (r.lazy_status == LazyStatus::TooManyAmbiguous) ++acc.ambiguous;
    if (r.lazy_status == LazyStatus::ResidualSyndrome) ++acc.residual;
    if (r.lazy_status != LazyStatus::Success) ++acc.events;
  });
  PFailEstimate e;
  e.estimate = wilson_estimate(t.events, t.trials, seed);
  e.too_many_ambiguous = t.ambiguous;
  e.residual_syndrome = t.residual;
  e.mean_defects = t.defects / static_cast<double>(t.trials);
  return e;
}

// ---------------------------------------------------------------------------------------------

namespace {

CodeLayout logical_layout(LogicalMode mode, CodeKind code, int d) {
  if (mode == LogicalMode::CircuitLevelWindow || code == CodeKind::RotatedSurface) {
    return build_rotated_surface_code(d);
  }
  return build_toric_code(d);
}

}  // namespace

LogicalExperiment::LogicalExperiment(DecoderKind kind, double p, int d, LogicalMode mode, CodeKind code,
                                     std::uint64_t seed)
    : kind_(kind), p_(p), d_(d), mode_(mode), seed_(seed), layout_(logical_layout(mode, code, d)) {
  if (mode == LogicalMode::PerfectMeasurement2D) {
    graph_ = build_code_capacity_graph(layout_, Basis::X, p);
  } else {
    schedule_ = build_schedule(layout_);
    const GraphOptions options{TimeReference::kPreparedState, 1};
    graph_ = build_decoding_graph(layout_, schedule_, d, NoiseParams{p, NoiseMode::CircuitLevel}, Basis::X, options);
    sampler_ = std::make_unique<FaultSampler>(schedule_, d, p);
  }
}

LogicalExperiment::Worker::Worker(const LogicalExperiment& exp)
    : exp_(&exp), decoder_(exp.graph_, exp.kind_) {}

TrialResult LogicalExperiment::Worker::run(std::int64_t index) {
  const LogicalExperiment& e = *exp_;
  SplitMix64 rng = trial_stream(e.seed_, static_cast<std::uint64_t>(index));
  Syndrome s;
  if (e.mode_ == LogicalMode::PerfectMeasurement2D) {
    sample_data_errors(e.layout_.num_data(), e.p_, rng, errors_);
    s = data_errors_to_syndrome(e.graph_, errors_);
    residual_.assign(e.layout_.num_data(), 0);
    for (QubitId q : errors_) residual_[q] ^= 1u;
  } else {
    e.sampler_->sample(rng, faults_);
    const MeasurementRecord m = simulate_measurements(e.layout_, e.schedule_, e.d_, faults_, 1);
    s = difference_syndrome(m.rounds_for(e.layout_, Basis::X), TimeReference::kPreparedState);
    residual_ = m.final_z;
  }
  const DecodeRecord rec = decoder_.decode(s);
  TrialResult r;
  r.index = index;
  r.lazy_ran = uses_lazy(e.kind_);
  r.lazy_status = rec.lazy.status;
  r.used_fallback = rec.used_fallback;
  r.wall_time = rec.wall_time;
  r.defects = s.defects.size();
  if (!rec.has_correction) {
    r.logical_failure = 1;
  } else {
    apply_correction(e.graph_, rec.correction.edges, residual_);
    r.logical_failure = is_logical_failure(e.layout_, Basis::X, residual_) ? 1 : 0;
  }
  return r;
}

LogicalEstimate estimate_logical_error(DecoderKind kind, double p, int d, std::int64_t trials,
                                       std::uint64_t seed, LogicalMode mode, CodeKind code, int workers) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const LogicalExperiment exp(kind, p, d, mode, code, seed);
  const Tally t = run_campaign(exp, trials, workers, [](Tally& acc, const TrialResult& r) {
    if (r.logical_failure == 1) ++acc.events;
    if (r.used_fallback) ++acc.fallbacks;
    if (r.lazy_ran && r.lazy_status != LazyStatus::Success) ++acc.lazy_failures;
  });
  LogicalEstimate e;
  e.estimate = wilson_estimate(t.events, t.trials, seed);
  e.fallbacks = t.fallbacks;
  e.lazy_failures = t.lazy_failures;
  return e;
}

// ---------------------------------------------------------------------------------------------

BenchmarkResult benchmark_runtime(std::span<const DecoderKind> kinds, double p, int d,
                                  std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const CodeLayout layout = build_toric_code(d);
  const DecodingGraph graph = build_code_capacity_graph(layout, Basis::X, p);
  std::vector<HierarchicalDecoder> decoders;
  decoders.reserve(kinds.size());
  for (DecoderKind k : kinds) decoders.emplace_back(graph, k);

  BenchmarkResult out;
  out.p = p;
  out.d = d;
  out.trials = trials;
  out.seed = seed;
  std::vector<std::vector<double>> times(kinds.size());
  std::vector<std::int64_t> fallbacks(kinds.size(), 0);
  for (auto& t : times) t.reserve(static_cast<std::size_t>(trials));

  std::vector<QubitId> errors;
  // A short warm-up on a separate stream fills caches and scratch buffers.
  const std::int64_t warmup = std::min<std::int64_t>(trials, 1000);
  for (std::int64_t i = 0; i < warmup; ++i) {
    SplitMix64 rng = trial_stream(~seed, static_cast<std::uint64_t>(i));
    sample_data_errors(layout.num_data(), p, rng, errors);
    const Syndrome s = data_errors_to_syndrome(graph, errors);
    for (auto& dec : decoders) dec.decode(s);
  }
  for (std::int64_t i = 0; i < trials; ++i) {
    SplitMix64 rng = trial_stream(seed, static_cast<std::uint64_t>(i));
    sample_data_errors(layout.num_data(), p, rng, errors);
    const Syndrome s = data_errors_to_syndrome(graph, errors);
    for (std::size_t k = 0; k < decoders.size(); ++k) {
      const DecodeRecord rec = decoders[k].decode(s);
      times[k].push_back(rec.wall_time);
      fallbacks[k] += rec.used_fallback ? 1 : 0;
    }
  }
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    out.kinds.push_back({kinds[k], summarize_timings(std::move(times[k])), fallbacks[k]});
  }
  return out;
}

// ---------------------------------------------------------------------------------------------

std::vector<BandwidthPoint> bandwidth_curve(std::span<const double> p_list, std::span<const int> d_list,
                                            std::int64_t trials, std::uint64_t seed, double tau, int workers) {
  std::vector<BandwidthPoint> out;
  for (double p : p_list) {
    for (int d : d_list) {
      BandwidthPoint pt;
      pt.p = p;
      pt.d = d;
      pt.p_fail = estimate_p_fail(p, d, trials, seed, workers).estimate;
      pt.bw_without = bandwidth_per_qubit(d, tau);
      pt.bw_with = pt.p_fail.point * pt.bw_without;
      const double inf = std::numeric_limits<double>::infinity();
      pt.reduction = pt.bw_with > 0.0 ? pt.bw_without / pt.bw_with : inf;
      pt.reduction_lower = pt.p_fail.upper > 0.0 ? 1.0 / pt.p_fail.upper : inf;
      out.push_back(pt);
    }
  }
  return out;
}

double provisioning_p_fail(const Estimate& e) { return e.censored ? e.upper : e.point; }

std::vector<TableRow> reproduce_table(double p_target, std::span<const double> p_list,
                                      std::span<const std::int64_t> K_list, std::int64_t trials,
                                      std::uint64_t seed, double tau, int workers, MCountMethod method,
                                      BandwidthConvention convention) {
  std::vector<TableRow> rows;
  for (double p : p_list) {
    const int d = select_distance(p, p_target);
    const Estimate est = estimate_p_fail(p, d, trials, seed, workers).estimate;
    for (std::int64_t K : K_list) {
      SystemParams params;
      params.p = p;
      params.p_target = p_target;
      params.K = K;
      params.tau = tau;
      params.p_fail = provisioning_p_fail(est);
      params.method = method;
      params.convention = convention;
      rows.push_back({requirement_report(params), est});
    }
  }
  return rows;
}

}  // namespace lazydec
