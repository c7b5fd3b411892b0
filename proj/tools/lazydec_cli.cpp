#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lazydec/experiments.h"
#include "lazydec/report_io.h"
#include "lazydec/resource_model.h"

using namespace lazydec;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kInfeasible = 2 };

struct Common {
  std::string out = "table";
  std::uint64_t seed = 1;
  std::int64_t trials = 10000;
  int workers = 0;
  double tau_ns = 1000.0;
};

void add_common(CLI::App* app, Common& c, bool with_tau = false) {
  app->add_option("--out", c.out, "Output format")->check(CLI::IsMember({"csv", "json", "table"}));
  app->add_option("--seed", c.seed, "Master seed");
  app->add_option("--trials", c.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  app->add_option("--workers", c.workers, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  if (with_tau) app->add_option("--tau-ns", c.tau_ns, "Round duration in ns")->check(CLI::PositiveNumber);
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

DecoderKind decoder_or_throw(const std::string& s) {
  const auto k = parse_decoder_kind(s);
  if (!k) throw UsageError("unknown decoder '" + s + "'");
  return *k;
}

void check_rate(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
}

void check_distance(int d, CodeKind code) {
  if (code == CodeKind::RotatedSurface && (d < 3 || d % 2 == 0)) throw UsageError("--d must be odd and >= 3");
  if (code == CodeKind::Toric2D && d < 3) throw UsageError("--d must be >= 3");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lazy pre-decoder for the surface code: simulation, benchmarks and resource estimates"};
  app.require_subcommand(1);

  // simulate
  Common sim;
  double sim_p = 1e-3;
  int sim_d = 5;
  std::string sim_decoder;
  std::string sim_mode = "circuit";
  std::string sim_code = "rotated";
  auto* simulate = app.add_subcommand("simulate", "Estimate p_fail (no --decoder) or a logical error rate");
  add_common(simulate, sim);
  simulate->add_option("--p", sim_p, "Physical error rate");
  simulate->add_option("--d", sim_d, "Code distance");
  simulate->add_option("--decoder", sim_decoder, "lazy, uf, mwpm, lazy+uf or lazy+mwpm");
  simulate->add_option("--mode", sim_mode, "Noise model")->check(CLI::IsMember({"circuit", "perfect"}));
  simulate->add_option("--code", sim_code, "Code for perfect-measurement runs")
      ->check(CLI::IsMember({"rotated", "toric"}));

  // requirements
  Common req;
  req.trials = 100000;
  double req_target = 1e-15;
  std::vector<double> req_p{1e-3, 1e-4, 1e-5};
  std::vector<std::int64_t> req_k{100, 1000, 10000};
  double req_pfail = -1.0;
  std::string req_method = "exact";
  std::string req_convention = "per-task";
  auto* requirements = app.add_subcommand("requirements", "Decoding hardware requirements table");
  add_common(requirements, req, true);
  requirements->add_option("--p-target", req_target, "Target logical error rate per round");
  requirements->add_option("--p", req_p, "Physical error rates")->expected(1, -1);
  requirements->add_option("--k", req_k, "Logical qubit counts")->expected(1, -1);
  requirements->add_option("--p-fail", req_pfail, "Use this p_fail instead of measuring it");
  requirements->add_option("--method", req_method, "M computation")->check(CLI::IsMember({"exact", "chernoff"}));
  requirements->add_option("--convention", req_convention, "Bandwidth per decoding task")
      ->check(CLI::IsMember({"per-task", "per-qubit"}));

  // benchmark
  Common bench;
  bench.trials = 100000;
  double bench_p = 1e-3;
  int bench_d = 20;
  std::vector<std::string> bench_decoders{"uf", "lazy+uf", "mwpm", "lazy+mwpm"};
  auto* benchmark = app.add_subcommand("benchmark", "Decode-time benchmark on the toric code");
  add_common(benchmark, bench);
  benchmark->add_option("--p", bench_p, "Physical error rate");
  benchmark->add_option("--d", bench_d, "Toric code size");
  benchmark->add_option("--decoder", bench_decoders, "Decoder kinds")->expected(1, -1);

  // bandwidth
  Common bw;
  std::vector<double> bw_p{1e-3, 1e-4, 1e-5};
  std::vector<int> bw_d{5, 15, 25};
  auto* bandwidth = app.add_subcommand("bandwidth", "Average syndrome bandwidth with and without the lazy stage");
  add_common(bandwidth, bw, true);
  bandwidth->add_option("--p", bw_p, "Physical error rates")->expected(1, -1);
  bandwidth->add_option("--d", bw_d, "Distances")->expected(1, -1);

  // graph-dump
  double gd_p = 1e-3;
  int gd_d = 3;
  int gd_rounds = -1;
  std::string gd_basis = "X";
  std::string gd_mode = "circuit";
  std::string gd_code = "rotated";
  auto* graph_dump = app.add_subcommand("graph-dump", "Print a decoding graph as JSON");
  graph_dump->add_option("--p", gd_p, "Physical error rate");
  graph_dump->add_option("--d", gd_d, "Code distance");
  graph_dump->add_option("--rounds", gd_rounds, "Noisy rounds (default: d)");
  graph_dump->add_option("--basis", gd_basis, "Check basis")->check(CLI::IsMember({"X", "Z"}));
  graph_dump->add_option("--mode", gd_mode, "Noise model")->check(CLI::IsMember({"circuit", "perfect"}));
  graph_dump->add_option("--code", gd_code, "Code")->check(CLI::IsMember({"rotated", "toric"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (simulate->parsed()) {
      check_rate(sim_p);
      const CodeKind code = sim_code == "toric" ? CodeKind::Toric2D : CodeKind::RotatedSurface;
      const LogicalMode mode = sim_mode == "perfect" ? LogicalMode::PerfectMeasurement2D : LogicalMode::CircuitLevelWindow;
      check_distance(sim_d, mode == LogicalMode::CircuitLevelWindow ? CodeKind::RotatedSurface : code);
      if (sim_decoder.empty()) {
        if (mode != LogicalMode::CircuitLevelWindow) throw UsageError("p_fail is defined for circuit-level noise");
        const PFailEstimate e = estimate_p_fail(sim_p, sim_d, sim.trials, sim.seed, sim.workers);
        if (sim.out == "json") {
          Json j = to_json(e);
          j["p"] = sim_p;
          j["d"] = sim_d;
          std::cout << j.dump(2) << '\n';
        } else if (sim.out == "csv") {
          write_estimate_csv(std::cout, "p_fail", e.estimate);
        } else {
          std::cout << "p_fail(p=" << sim_p << ", d=" << sim_d << ") = " << e.estimate.point << "  95% CI ["
                    << e.estimate.lower << ", " << e.estimate.upper << "]" << (e.estimate.censored ? " (censored)" : "")
                    << "  trials " << e.estimate.trials << ", mean defects " << e.mean_defects << '\n';
        }
      } else {
        const DecoderKind kind = decoder_or_throw(sim_decoder);
        const LogicalEstimate e = estimate_logical_error(kind, sim_p, sim_d, sim.trials, sim.seed, mode, code, sim.workers);
        if (sim.out == "json") {
          Json j = to_json(e);
          j["decoder"] = to_string(kind);
          j["p"] = sim_p;
          j["d"] = sim_d;
          j["mode"] = sim_mode;
          std::cout << j.dump(2) << '\n';
        } else if (sim.out == "csv") {
          write_estimate_csv(std::cout, to_string(kind), e.estimate);
        } else {
          std::cout << "logical error rate [" << to_string(kind) << ", " << sim_mode << ", d=" << sim_d
                    << ", p=" << sim_p << "] = " << e.estimate.point << "  95% CI [" << e.estimate.lower << ", "
                    << e.estimate.upper << "]  fallbacks " << e.fallbacks << '\n';
        }
      }
    } else if (requirements->parsed()) {
      for (double p : req_p) check_rate(p);
      const MCountMethod method = req_method == "chernoff" ? MCountMethod::kChernoff : MCountMethod::kExactScan;
      const double tau = req.tau_ns * 1e-9;
      const BandwidthConvention convention =
          req_convention == "per-qubit" ? BandwidthConvention::kEquationLiteral : BandwidthConvention::kPerBasisTask;
      std::vector<TableRow> rows;
      if (req_pfail >= 0.0) {
        if (req_pfail > 1.0) throw UsageError("--p-fail must lie in [0, 1]");
        for (double p : req_p) {
          for (std::int64_t k : req_k) {
            SystemParams params;
            params.p = p;
            params.p_target = req_target;
            params.K = k;
            params.tau = tau;
            params.p_fail = req_pfail;
            params.method = method;
            params.convention = convention;
            TableRow row{requirement_report(params), {}};
            row.p_fail.point = req_pfail;
            row.p_fail.lower = row.p_fail.upper = req_pfail;
            rows.push_back(row);
          }
        }
      } else {
        rows = reproduce_table(req_target, req_p, req_k, req.trials, req.seed, tau, req.workers, method, convention);
      }
      if (req.out == "json") {
        Json j = Json::array();
        for (const TableRow& r : rows) j.push_back(to_json(r));
        std::cout << j.dump(2) << '\n';
      } else if (req.out == "csv") {
        write_requirements_csv(std::cout, rows);
      } else {
        write_requirements_table(std::cout, rows);
      }
    } else if (benchmark->parsed()) {
      check_rate(bench_p);
      check_distance(bench_d, CodeKind::Toric2D);
      std::vector<DecoderKind> kinds;
      for (const std::string& s : bench_decoders) kinds.push_back(decoder_or_throw(s));
      const BenchmarkResult b = benchmark_runtime(kinds, bench_p, bench_d, bench.trials, bench.seed);
      if (bench.out == "json") {
        std::cout << to_json(b).dump(2) << '\n';
      } else if (bench.out == "csv") {
        write_benchmark_csv(std::cout, b);
      } else {
        write_benchmark_table(std::cout, b);
      }
    } else if (bandwidth->parsed()) {
      for (double p : bw_p) check_rate(p);
      for (int d : bw_d) check_distance(d, CodeKind::RotatedSurface);
      const auto points = bandwidth_curve(bw_p, bw_d, bw.trials, bw.seed, bw.tau_ns * 1e-9, bw.workers);
      if (bw.out == "json") {
        Json j = Json::array();
        for (const BandwidthPoint& pt : points) j.push_back(to_json(pt));
        std::cout << j.dump(2) << '\n';
      } else if (bw.out == "csv") {
        write_bandwidth_csv(std::cout, points);
      } else {
        write_bandwidth_table(std::cout, points);
      }
    } else if (graph_dump->parsed()) {
      check_rate(gd_p);
      const CodeKind code = gd_code == "toric" ? CodeKind::Toric2D : CodeKind::RotatedSurface;
      const Basis basis = gd_basis == "Z" ? Basis::Z : Basis::X;
      DecodingGraph graph;
      if (gd_mode == "perfect") {
        check_distance(gd_d, code);
        const CodeLayout layout = code == CodeKind::Toric2D ? build_toric_code(gd_d) : build_rotated_surface_code(gd_d);
        graph = build_code_capacity_graph(layout, basis, gd_p);
      } else {
        if (code == CodeKind::Toric2D) throw UsageError("circuit-level graphs use the rotated code");
        check_distance(gd_d, code);
        const CodeLayout layout = build_rotated_surface_code(gd_d);
        const CircuitSchedule schedule = build_schedule(layout);
        graph = build_decoding_graph(layout, schedule, gd_rounds > 0 ? gd_rounds : gd_d,
                                     NoiseParams{gd_p, NoiseMode::CircuitLevel}, basis);
      }
      std::cout << graph_to_json(graph).dump(2) << '\n';
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}
