#pragma once

#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "lazydec/decoding_graph.h"
#include "lazydec/experiments.h"
#include "lazydec/resource_model.h"
#include "lazydec/statistics.h"

namespace lazydec {

using Json = nlohmann::ordered_json;

Json to_json(const Estimate& e);
Json to_json(const RequirementReport& r);
Json to_json(const PFailEstimate& e);
Json to_json(const LogicalEstimate& e);
Json to_json(const BenchmarkResult& b);
Json to_json(const BandwidthPoint& pt);
Json to_json(const TableRow& row);
/// Vertices, full edges and half-edges of a graph.
Json graph_to_json(const DecodingGraph& graph);

/// Human-readable rate, e.g. "84 GBit/s" or "7.28 TBit/s".
std::string format_bandwidth(double bits_per_second);

// CSV writers emit a header line followed by one line per record, columns in a fixed order.
void write_requirements_csv(std::ostream& os, std::span<const TableRow> rows);
void write_benchmark_csv(std::ostream& os, const BenchmarkResult& b);
void write_bandwidth_csv(std::ostream& os, std::span<const BandwidthPoint> points);
void write_estimate_csv(std::ostream& os, const std::string& label, const Estimate& e, bool header = true);

/// One block per p, one column per K; each cell lists d, bandwidth, decoding units and savings.
void write_requirements_table(std::ostream& os, std::span<const TableRow> rows);
void write_benchmark_table(std::ostream& os, const BenchmarkResult& b);
void write_bandwidth_table(std::ostream& os, std::span<const BandwidthPoint> points);

}  // namespace lazydec
