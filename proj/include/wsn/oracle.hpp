#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "wsn/optimizer.hpp"

namespace wsn::oracle {

struct OracleReport {
  std::string quantity;
  double oracle_value = 0;
  double artifact_value = 0;
  double relative_gap = 0;  // |a-b| / max(|a|,|b|,eps_mach)
  double tolerance = 0;
  bool pass = false;
};

double relative_gap(double a, double b);
OracleReport make_report(const std::string& quantity, double oracle_value,
                         double artifact_value, double tolerance);

// Adaptive-quadrature evaluation of the defining integral
// E1(x) = \int_1^inf e^{-x t}/t dt, independent of the series/continued
// fraction implementation it audits.
double exp_integral_e1_quadrature(double x);

// Exhaustive grid search over the flow simplex (step is a fraction of the
// budget).  Minimizes the exact per-AP routing objective:
//   outage:  sum_m kappa_m (2^(F_m/B) - 1)
//   ergodic: sum_m kappa_m (e^(2 F_m/(B log2 e)) - 1)/2
// with kappa_m = b_{n,m} d_m^2.  Refuses more than 4 links.
Eigen::VectorXd routing_oracle(const Eigen::VectorXd& kappa, double budget_bps,
                               double bandwidth_hz, Mode mode, double step);

// The objectives above, exposed so tests can compare allocations.
double routing_objective(const Eigen::VectorXd& kappa,
                         const Eigen::VectorXd& flows_bps, double bandwidth_hz,
                         Mode mode);

// Draws |h|^2 ~ Exp(1) and counts rate outages B log2(1 + |h|^2 gamma) < F.
// At the threshold SNR gamma = (2^(F/B)-1)/ln(1/(1-eps)) the empirical rate
// approaches eps.
double outage_mc_validator(double gamma, double flow_bps, double bandwidth_hz,
                           std::int64_t trials, std::uint64_t seed);

// Scans the true weighted objective of the union of regions i and j over an
// alpha grid and returns the minimizing alpha.  Ties (plateaus from the cell
// quantization) resolve to the center of the minimizing run.
struct BoundaryScan {
  double alpha = 0;
  double objective = 0;
};
BoundaryScan boundary_oracle_scan(int i, int j, const SolverState& st, Mode mode,
                                  int n_samples);

// Small randomized scenario (N <= 5 APs, M <= 2 BSs) on a coarse grid, used
// by the boundary battery and the fixed-point test suites.
ScenarioConfig random_small_scenario(std::uint64_t seed, int grid = 40);

// Verification batteries behind the CLI `verify` subcommand.
std::vector<OracleReport> verify_numerics(std::uint64_t seed);
std::vector<OracleReport> verify_routing(std::uint64_t seed);
std::vector<OracleReport> verify_boundary(std::uint64_t seed);
std::vector<OracleReport> verify_outage_mc(std::uint64_t seed);

}  // namespace wsn::oracle
