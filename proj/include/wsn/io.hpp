#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wsn/optimizer.hpp"
#include "wsn/oracle.hpp"
#include "wsn/scenario.hpp"

namespace wsn::io {

// Scenario files are JSON documents with explicit units in the field names;
// see the README for the schema.
ScenarioConfig load_scenario(const std::filesystem::path& path);
ScenarioConfig parse_scenario(const std::string& json_text);
std::string scenario_to_json(const ScenarioConfig& cfg);

// FNV-1a over the canonical (sorted-key) serialization.
std::string config_hash(const ScenarioConfig& cfg);

// Everything needed to reproduce and re-evaluate a finished run.  Documents
// are byte-identical across runs with the same config and seed, except for
// the wall time field.
struct ResultDocument {
  std::string config_hash;
  std::string algorithm;  // "pool" | "peel"
  std::uint64_t seed = 0;
  PowerBreakdown power;
  Eigen::MatrixX2d ap_positions;
  Eigen::MatrixX2d bs_positions;
  Eigen::MatrixXd flows;       // bits/s
  Eigen::VectorXi cell_owner;  // full grid, -1 outside region
  int iterations = 0;
  bool converged = false;
  double wall_time_s = 0;
};

ResultDocument make_result_document(const ScenarioConfig& cfg,
                                    const RunResult& run,
                                    const std::string& algorithm,
                                    double wall_time_s);
std::string result_to_json(const ResultDocument& doc);
ResultDocument parse_result(const std::string& json_text);
ResultDocument load_result(const std::filesystem::path& path);
void save_result(const ResultDocument& doc, const std::filesystem::path& path);

// Trace CSV: iter, d_total_w, sensor_w, ap_w, step.
void write_trace_csv(const OptimizationTrace& trace,
                     const std::filesystem::path& path);

// Verification reports as a JSON document.
std::string reports_to_json(const std::string& suite, std::uint64_t seed,
                            const std::vector<oracle::OracleReport>& reports);

// Geometry CSV: kind(cell|ap|bs), x_m, y_m, owner_or_index.  One row per
// in-region cell plus one per node.
void write_geometry_csv(const DensityGrid& grid, const Partition& part,
                        const Deployment& dep,
                        const std::filesystem::path& path);

}  // namespace wsn::io
