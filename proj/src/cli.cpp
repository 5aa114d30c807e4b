#include "wsn/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <vector>

#include "wsn/io.hpp"
#include "wsn/oracle.hpp"
#include "wsn/optimizer.hpp"

namespace wsn::cli {

namespace {

struct SeedOutcome {
  RunResult run;
  std::uint64_t seed;
  double wall_time_s;
};

SeedOutcome run_one(ScenarioConfig cfg, Mode mode, std::uint64_t seed) {
  cfg.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  RunResult run = optimize(cfg, mode);
  const auto t1 = std::chrono::steady_clock::now();
  return {std::move(run), seed,
          std::chrono::duration<double>(t1 - t0).count()};
}

void print_power(const PowerBreakdown& p) {
  std::cout << "sensor_power_w=" << p.sensor_power
            << " ap_power_w=" << p.ap_power
            << " weighted_total_w=" << p.weighted_total << " ("
            << p.weighted_total * 1e3 << " mW";
  if (p.weighted_total > 0)
    std::cout << ", " << 10.0 * std::log10(p.weighted_total * 1e3) << " dBm";
  std::cout << ")\n";
}

}  // namespace

int cmd_optimize(const OptimizeArgs& args) {
  ScenarioConfig cfg;
  try {
    cfg = io::load_scenario(args.config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }
  const ValidationResult validation = validate_config(cfg);
  for (const auto& w : validation.warnings)
    std::cerr << "warning: " << w << '\n';
  if (!validation.ok()) {
    for (const auto& e : validation.errors) std::cerr << "config error: " << e << '\n';
    return 1;
  }
  Mode mode;
  if (args.algorithm == "pool") {
    mode = Mode::Pool;
  } else if (args.algorithm == "peel") {
    mode = Mode::Peel;
  } else {
    std::cerr << "config error: unknown algorithm '" << args.algorithm
              << "' (expected pool or peel)\n";
    return 1;
  }
  if (args.seed) cfg.seed = *args.seed;

  std::vector<std::uint64_t> seeds;
  if (args.seed_sweep) {
    const auto dots = args.seed_sweep->find("..");
    if (dots == std::string::npos) {
      std::cerr << "config error: --seed-sweep expects a..b\n";
      return 1;
    }
    const std::uint64_t a = std::stoull(args.seed_sweep->substr(0, dots));
    const std::uint64_t b = std::stoull(args.seed_sweep->substr(dots + 2));
    for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
    if (seeds.empty()) {
      std::cerr << "config error: empty seed sweep\n";
      return 1;
    }
  } else {
    seeds.push_back(cfg.seed);
  }

  SeedOutcome best;
  if (seeds.size() == 1) {
    best = run_one(cfg, mode, seeds[0]);
  } else {
    std::vector<std::future<SeedOutcome>> jobs;
    jobs.reserve(seeds.size());
    for (std::uint64_t s : seeds)
      jobs.push_back(std::async(std::launch::async, run_one, cfg, mode, s));
    bool first = true;
    for (auto& job : jobs) {
      SeedOutcome out = job.get();
      std::cout << "seed " << out.seed << ": weighted_total_w="
                << out.run.final_power.weighted_total << '\n';
      if (first || out.run.final_power.weighted_total <
                       best.run.final_power.weighted_total) {
        best = std::move(out);
        first = false;
      }
    }
    std::cout << "best seed: " << best.seed << '\n';
  }

  cfg.seed = best.seed;
  for (const auto& note : best.run.trace.notes) std::cerr << "note: " << note << '\n';
  for (const auto& defect : best.run.trace.defects)
    std::cerr << "DEFECT: " << defect << '\n';
  print_power(best.run.final_power);
  std::cout << "iterations=" << best.run.iterations << " status="
            << (best.run.trace.status == OptimizationTrace::Status::Converged
                    ? "converged"
                    : "max_iters")
            << '\n';

  if (!args.out_path.empty())
    io::save_result(io::make_result_document(cfg, best.run, args.algorithm,
                                             best.wall_time_s),
                    args.out_path);
  if (!args.trace_path.empty()) io::write_trace_csv(best.run.trace, args.trace_path);
  if (!args.geometry_path.empty()) {
    const DensityGrid grid = build_density_grid(cfg);
    io::write_geometry_csv(grid, best.run.part, best.run.dep, args.geometry_path);
  }
  return best.run.trace.status == OptimizationTrace::Status::Converged ? 0 : 2;
}

int cmd_eval(const EvalArgs& args) {
  ScenarioConfig cfg;
  io::ResultDocument doc;
  try {
    cfg = io::load_scenario(args.config_path);
    doc = io::load_result(args.deployment_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  const ValidationResult validation = validate_config(cfg);
  if (!validation.ok()) {
    for (const auto& e : validation.errors) std::cerr << "config error: " << e << '\n';
    return 1;
  }
  if (args.objective != "d1" && args.objective != "d2") {
    std::cerr << "error: objective must be d1 or d2\n";
    return 1;
  }

  const LinkCoefficients coef = derive_coefficients(cfg);
  const DensityGrid grid = build_density_grid(cfg);
  if (doc.ap_positions.rows() != cfg.n_aps ||
      doc.bs_positions.rows() != cfg.n_bss ||
      doc.flows.rows() != cfg.n_aps || doc.flows.cols() != cfg.n_bss ||
      doc.cell_owner.size() != Eigen::Index(grid.nx) * grid.ny) {
    std::cerr << "error: deployment shapes do not match the config\n";
    return 1;
  }
  for (int idx : grid.region_cells)
    if (doc.cell_owner[idx] < 0 || doc.cell_owner[idx] >= cfg.n_aps) {
      std::cerr << "error: cell owner out of range\n";
      return 1;
    }

  Partition part;
  part.n_regions = cfg.n_aps;
  part.owner = doc.cell_owner;
  part.stats = region_stats(part.owner, grid, cfg.n_aps, doc.ap_positions);
  const Deployment dep{doc.ap_positions, doc.bs_positions};
  const PowerBreakdown pb = args.objective == "d1"
                                ? d1_total(dep, part, doc.flows, cfg, coef)
                                : d2_total(dep, part, doc.flows, cfg, coef);
  print_power(pb);
  return 0;
}

int cmd_verify(const VerifyArgs& args) {
  std::vector<oracle::OracleReport> reports;
  if (args.suite == "numerics") {
    reports = oracle::verify_numerics(args.seed);
  } else if (args.suite == "routing") {
    reports = oracle::verify_routing(args.seed);
  } else if (args.suite == "boundary") {
    reports = oracle::verify_boundary(args.seed);
  } else if (args.suite == "outage-mc") {
    reports = oracle::verify_outage_mc(args.seed);
  } else {
    std::cerr << "error: unknown suite '" << args.suite
              << "' (numerics|routing|boundary|outage-mc)\n";
    return 1;
  }
  bool all_pass = true;
  for (const auto& r : reports) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.quantity
              << " oracle=" << r.oracle_value << " artifact=" << r.artifact_value
              << " rel_gap=" << r.relative_gap << " tol=" << r.tolerance << '\n';
    all_pass = all_pass && r.pass;
  }
  if (!args.out_path.empty()) {
    std::ofstream out(args.out_path);
    if (!out) {
      std::cerr << "error: cannot write " << args.out_path << '\n';
      return 1;
    }
    out << io::reports_to_json(args.suite, args.seed, reports) << '\n';
  }
  return all_pass ? 0 : 3;
}

}  // namespace wsn::cli
