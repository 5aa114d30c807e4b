#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "wsn/density_grid.hpp"
#include "wsn/partition.hpp"
#include "wsn/power.hpp"
#include "wsn/scenario.hpp"
#include "wsn/special_functions.hpp"

namespace wsn {

enum class Mode { Pool, Peel };

struct TraceRecord {
  int iter = 0;
  double d_total = 0;
  double sensor = 0;
  double ap = 0;
  std::string step;
};

struct OptimizationTrace {
  enum class Status { Converged, MaxIters };
  std::vector<TraceRecord> records;
  std::vector<std::string> notes;    // e.g. regions that became disconnected
  std::vector<std::string> defects;  // monotonicity violations beyond slack
  Status status = Status::Converged;
};

// Mutable optimizer state over immutable problem data.
struct SolverState {
  const ScenarioConfig& cfg;
  const LinkCoefficients& coef;
  const DensityGrid& grid;
  Deployment dep;
  Partition part;
  Eigen::MatrixXd r;  // normalized flows, N x M
};

// Flows implied by the current normalized flows and region volumes.
Eigen::MatrixXd state_flows(const SolverState& st);
PowerBreakdown state_power(const SolverState& st, Mode mode);

// Alternates weighted Voronoi assignment with centroid moves until the
// largest centroid step falls below 1e-6 * region diameter (or 500 rounds).
// Initial AP positions are sampled uniformly in the region from the seed.
struct LloydInit {
  Eigen::MatrixX2d p;
  Partition part;
  int rounds = 0;
  std::vector<double> dprime;  // weighted quantization cost per round
};
LloydInit init_weighted_lloyd(const ScenarioConfig& cfg,
                              const LinkCoefficients& coef,
                              const DensityGrid& grid, std::uint64_t seed);

// Lloyd/k-means over the AP points with M centers; k-means++ style seeding.
// M >= N lands centers on the AP points directly.
Eigen::MatrixX2d init_bs_lloyd(const Eigen::MatrixX2d& p, int n_bss,
                               std::uint64_t seed);

// One exact block-minimization pass: every AP moves to its weighted blend of
// region centroid and BS positions, then every BS to its weighted mean of
// the new AP positions.  Degenerate (all-zero) weights leave a node where it
// is.  Results are clamped to the region's bounding box.
Deployment pool_position_update(const RegionStats& stats,
                                const Eigen::MatrixXd& flows,
                                const Deployment& dep, const ScenarioConfig& cfg,
                                const LinkCoefficients& coef);
Deployment peel_position_update(const RegionStats& stats,
                                const Eigen::MatrixXd& flows,
                                const Deployment& dep, const ScenarioConfig& cfg,
                                const LinkCoefficients& coef);

// Signed boundary-balance residual at h(alpha) = alpha p_i + (1-alpha) p_j,
// with volumes recomputed from the candidate split.  Positive means region i
// is still too cheap at h (the balance point lies at larger alpha than the
// root when read left to right from p_j).  Non-neighbor pairs are rejected.
double pool_boundary_residual(int i, int j, double alpha, const SolverState& st);
double peel_boundary_residual(int i, int j, double alpha, const SolverState& st);

// Weighted objective contribution of the union of regions i and j under a
// candidate split (sensor integrals of both sides plus lambda times their AP
// power at flows r * R_b * v).
double boundary_objective(int i, int j, const SplitResult& split,
                          const SolverState& st, Mode mode);

// Root-solves the residual over alpha in [0,1]; without a sign change the
// better endpoint is taken.  The partition is updated only if the objective
// does not increase.  Returns whether an update was applied.
bool boundary_adjust_pair(int i, int j, SolverState& st, Mode mode,
                          const num::RootSolveSettings& settings = {});

// Owning bundle of the immutable problem data, for callers that drive the
// solver pieces directly (tests, verification batteries).
struct Problem {
  ScenarioConfig cfg;
  LinkCoefficients coef;
  DensityGrid grid;
  explicit Problem(ScenarioConfig c);
  // Initialized state: weighted Lloyd APs, Lloyd BSs, fresh routing.
  SolverState make_state(Mode mode) const;
};

struct RunResult {
  Deployment dep;
  Partition part;
  FlowMatrix flows;
  OptimizationTrace trace;
  PowerBreakdown final_power;
  int iterations = 0;
};

// Full optimization loops: initialization, then per iteration position
// updates, randomized boundary sweeps, and a routing refresh (unconditional
// for the outage mode, accept-if-improving for the ergodic mode), until the
// relative improvement drops below tau or max_iters is hit.
RunResult pool_run(const ScenarioConfig& cfg);
RunResult peel_run(const ScenarioConfig& cfg);
RunResult optimize(const ScenarioConfig& cfg, Mode mode);

}  // namespace wsn
