#include "lazydec/report_io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <map>
#include <sstream>
#include <vector>

namespace lazydec {

namespace {

const char* class_name(EdgeClass c) {
  switch (c) {
    case EdgeClass::Space: return "space";
    case EdgeClass::Time: return "time";
    case EdgeClass::Diagonal: return "diagonal";
    case EdgeClass::Boundary: return "boundary";
  }
  return "?";
}

// JSON has no infinity; unbounded values are written as null.
Json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::string with_commas(std::int64_t n) {
  std::string s = std::to_string(n < 0 ? -n : n);
  for (int i = static_cast<int>(s.size()) - 3; i > 0; i -= 3) s.insert(static_cast<std::size_t>(i), ",");
  return n < 0 ? "-" + s : s;
}

}  // namespace

Json to_json(const Estimate& e) {
  Json j;
  j["point"] = e.point;
  j["lower"] = e.lower;
  j["upper"] = e.upper;
  j["events"] = e.events;
  j["trials"] = e.trials;
  j["seed"] = e.seed;
  j["censored"] = e.censored;
  return j;
}

Json to_json(const RequirementReport& r) {
  Json j;
  j["p"] = r.p;
  j["p_target"] = r.p_target;
  j["K"] = r.K;
  j["p_fail"] = r.p_fail;
  j["d"] = r.d;
  j["p_L"] = r.p_L;
  j["M"] = r.M;
  j["bw_required"] = r.bw_required;
  j["bw_no_lazy"] = r.bw_no_lazy;
  j["dec_units_lazy"] = r.dec_units_lazy;
  j["dec_units_naive"] = r.dec_units_naive;
  j["savings_fraction"] = r.savings_fraction;
  return j;
}

Json to_json(const PFailEstimate& e) {
  Json j = to_json(e.estimate);
  j["too_many_ambiguous"] = e.too_many_ambiguous;
  j["residual_syndrome"] = e.residual_syndrome;
  j["mean_defects"] = e.mean_defects;
  return j;
}

Json to_json(const LogicalEstimate& e) {
  Json j = to_json(e.estimate);
  j["fallbacks"] = e.fallbacks;
  j["lazy_failures"] = e.lazy_failures;
  return j;
}

Json to_json(const BenchmarkResult& b) {
  Json j;
  j["p"] = b.p;
  j["d"] = b.d;
  j["trials"] = b.trials;
  j["seed"] = b.seed;
  Json kinds = Json::array();
  for (const KindTiming& k : b.kinds) {
    kinds.push_back({{"kind", to_string(k.kind)},
                     {"mean", k.timing.mean},
                     {"p99", k.timing.p99},
                     {"max", k.timing.max},
                     {"samples", k.timing.samples},
                     {"fallbacks", k.fallbacks}});
  }
  j["kinds"] = std::move(kinds);
  return j;
}

Json to_json(const BandwidthPoint& pt) {
  Json j;
  j["p"] = pt.p;
  j["d"] = pt.d;
  j["p_fail"] = to_json(pt.p_fail);
  j["bw_without"] = pt.bw_without;
  j["bw_with"] = pt.bw_with;
  j["reduction"] = number(pt.reduction);
  j["reduction_lower"] = number(pt.reduction_lower);
  return j;
}

Json to_json(const TableRow& row) {
  Json j = to_json(row.report);
  j["p_fail_estimate"] = to_json(row.p_fail);
  return j;
}

Json graph_to_json(const DecodingGraph& graph) {
  Json j;
  j["basis"] = to_string(graph.basis());
  j["rounds"] = graph.rounds();
  j["checks_per_round"] = graph.checks_per_round();
  Json vs = Json::array();
  for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
    const GraphVertex& gv = graph.vertex(static_cast<VertexId>(v));
    vs.push_back({{"id", v}, {"x", gv.coord.x}, {"y", gv.coord.y}, {"t", gv.t}, {"check", gv.check}});
  }
  j["vertices"] = std::move(vs);
  Json es = Json::array();
  for (std::size_t e = 0; e < graph.num_all_edges(); ++e) {
    const GraphEdge& ge = graph.edge(static_cast<EdgeId>(e));
    Json ej{{"id", e}, {"u", ge.u}};
    ej["v"] = ge.is_half() ? Json(nullptr) : Json(ge.v);
    ej["class"] = class_name(ge.cls);
    ej["probability"] = ge.probability;
    ej["weight"] = number(ge.weight);
    ej["data_effect"] = ge.data_effect;
    es.push_back(std::move(ej));
  }
  j["edges"] = std::move(es);
  return j;
}

std::string format_bandwidth(double bps) {
  static const char* units[] = {"Bit/s", "KBit/s", "MBit/s", "GBit/s", "TBit/s", "PBit/s"};
  int k = 0;
  double v = bps;
  while (std::abs(v) >= 1000.0 && k < 5) {
    v /= 1000.0;
    ++k;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g %s", v, units[k]);
  return buf;
}

void write_requirements_csv(std::ostream& os, std::span<const TableRow> rows) {
  os << "p,p_target,K,d,p_L,p_fail,p_fail_lower,p_fail_upper,p_fail_trials,censored,M,bw_required,"
        "bw_no_lazy,dec_units_lazy,dec_units_naive,savings_fraction\n";
  for (const TableRow& row : rows) {
    const RequirementReport& r = row.report;
    os << fmt(r.p) << ',' << fmt(r.p_target) << ',' << r.K << ',' << r.d << ',' << fmt(r.p_L) << ','
       << fmt(r.p_fail) << ',' << fmt(row.p_fail.lower) << ',' << fmt(row.p_fail.upper) << ','
       << row.p_fail.trials << ',' << (row.p_fail.censored ? 1 : 0) << ',' << r.M << ','
       << fmt(r.bw_required, 10) << ',' << fmt(r.bw_no_lazy, 10) << ',' << r.dec_units_lazy << ','
       << r.dec_units_naive << ',' << fmt(r.savings_fraction) << '\n';
  }
}

void write_benchmark_csv(std::ostream& os, const BenchmarkResult& b) {
  os << "kind,p,d,trials,seed,mean_s,p99_s,max_s,fallbacks\n";
  for (const KindTiming& k : b.kinds) {
    os << to_string(k.kind) << ',' << fmt(b.p) << ',' << b.d << ',' << b.trials << ',' << b.seed << ','
       << fmt(k.timing.mean) << ',' << fmt(k.timing.p99) << ',' << fmt(k.timing.max) << ',' << k.fallbacks
       << '\n';
  }
}

void write_bandwidth_csv(std::ostream& os, std::span<const BandwidthPoint> points) {
  os << "p,d,p_fail,p_fail_lower,p_fail_upper,trials,censored,bw_without,bw_with,reduction,reduction_lower\n";
  for (const BandwidthPoint& pt : points) {
    os << fmt(pt.p) << ',' << pt.d << ',' << fmt(pt.p_fail.point) << ',' << fmt(pt.p_fail.lower) << ','
       << fmt(pt.p_fail.upper) << ',' << pt.p_fail.trials << ',' << (pt.p_fail.censored ? 1 : 0) << ','
       << fmt(pt.bw_without, 10) << ',' << fmt(pt.bw_with, 10) << ',' << fmt(pt.reduction) << ','
       << fmt(pt.reduction_lower) << '\n';
  }
}

void write_estimate_csv(std::ostream& os, const std::string& label, const Estimate& e, bool header) {
  if (header) os << "label,point,lower,upper,events,trials,seed,censored\n";
  os << label << ',' << fmt(e.point) << ',' << fmt(e.lower) << ',' << fmt(e.upper) << ',' << e.events << ','
     << e.trials << ',' << e.seed << ',' << (e.censored ? 1 : 0) << '\n';
}

void write_requirements_table(std::ostream& os, std::span<const TableRow> rows) {
  if (rows.empty()) return;
  std::vector<std::int64_t> ks;
  std::vector<double> ps;
  for (const TableRow& r : rows) {
    if (std::find(ks.begin(), ks.end(), r.report.K) == ks.end()) ks.push_back(r.report.K);
    if (std::find(ps.begin(), ps.end(), r.report.p) == ps.end()) ps.push_back(r.report.p);
  }
  std::map<std::pair<double, std::int64_t>, const TableRow*> cell;
  for (const TableRow& r : rows) cell[{r.report.p, r.report.K}] = &r;

  constexpr int kw = 10;
  constexpr int cw = 20;
  os << "p_target = " << fmt(rows.front().report.p_target) << '\n';
  os << std::left << std::setw(kw) << "p";
  for (std::int64_t k : ks) os << std::setw(cw) << ("K = " + with_commas(k));
  os << '\n';
  os << std::string(static_cast<std::size_t>(kw + cw * static_cast<int>(ks.size())), '-') << '\n';
  for (double p : ps) {
    const auto line = [&](const std::string& head, auto text) {
      os << std::setw(kw) << head;
      for (std::int64_t k : ks) {
        const auto it = cell.find({p, k});
        os << std::setw(cw) << (it == cell.end() ? std::string() : text(*it->second));
      }
      os << '\n';
    };
    line("", [](const TableRow& r) { return "d = " + std::to_string(r.report.d); });
    line(fmt(p, 3), [](const TableRow& r) { return format_bandwidth(r.report.bw_required); });
    line("", [](const TableRow& r) { return with_commas(r.report.dec_units_lazy) + " dec. units"; });
    line("", [](const TableRow& r) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "save %.1f%%", 100.0 * r.report.savings_fraction);
      return std::string(buf);
    });
    line("", [](const TableRow& r) { return "p_fail = " + fmt(r.report.p_fail, 3); });
    os << std::string(static_cast<std::size_t>(kw + cw * static_cast<int>(ks.size())), '-') << '\n';
  }
  os << std::right;
}

void write_benchmark_table(std::ostream& os, const BenchmarkResult& b) {
  os << "toric d = " << b.d << ", p = " << fmt(b.p) << ", " << b.trials << " trials, seed " << b.seed << '\n';
  os << std::left << std::setw(12) << "decoder" << std::right << std::setw(14) << "mean (us)" << std::setw(14)
     << "p99 (us)" << std::setw(14) << "max (us)" << std::setw(12) << "fallbacks" << '\n';
  for (const KindTiming& k : b.kinds) {
    os << std::left << std::setw(12) << to_string(k.kind) << std::right << std::fixed << std::setprecision(3)
       << std::setw(14) << k.timing.mean * 1e6 << std::setw(14) << k.timing.p99 * 1e6 << std::setw(14)
       << k.timing.max * 1e6 << std::setw(12) << k.fallbacks << '\n';
    os.unsetf(std::ios::floatfield);
  }
}

void write_bandwidth_table(std::ostream& os, std::span<const BandwidthPoint> points) {
  os << std::left << std::setw(10) << "p" << std::setw(6) << "d" << std::setw(26) << "p_fail [95% CI]"
     << std::setw(16) << "without" << std::setw(16) << "with" << "reduction\n";
  for (const BandwidthPoint& pt : points) {
    const std::string ci = fmt(pt.p_fail.point, 3) + " [" + fmt(pt.p_fail.lower, 3) + ", " +
                           fmt(pt.p_fail.upper, 3) + "]";
    const std::string red = std::isfinite(pt.reduction) ? fmt(pt.reduction, 4) : ">= " + fmt(pt.reduction_lower, 4);
    os << std::setw(10) << fmt(pt.p, 3) << std::setw(6) << pt.d << std::setw(26) << ci << std::setw(16)
       << format_bandwidth(pt.bw_without) << std::setw(16) << format_bandwidth(pt.bw_with) << red << '\n';
  }
  os << std::right;
}

}  // namespace lazydec
