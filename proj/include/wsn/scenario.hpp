#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "wsn/geometry.hpp"

namespace wsn {

// Sensor density over the target region: either uniform with a given total
// count, or explicit per-cell samples (sensors per m^2, row-major, y-major
// over the grid of the region's bounding box).
struct DensitySpec {
  enum class Kind { Uniform, Samples };
  Kind kind = Kind::Uniform;
  double uniform_total = 0.0;
  Eigen::ArrayXXd samples;  // (grid, grid) when kind == Samples
};

// Full network description: geometry, density, node counts, radio
// parameters, multipliers and stopping controls.
struct ScenarioConfig {
  ConvexRegion region;
  int grid = 100;  // cells per axis over the bounding box
  DensitySpec density;

  int n_aps = 1;
  int n_bss = 1;

  double rb_bps = 0;                   // per-sensor bit-rate R_b
  double bandwidth_hz = 0;             // channel bandwidth B
  double noise_density_w_per_hz = 0;   // sigma
  double carrier_wavelength_m = 0;     // lambda_c

  Eigen::VectorXd ap_tx_gain;  // size N
  Eigen::VectorXd ap_rx_gain;  // size N
  Eigen::VectorXd ap_loss;     // size N
  Eigen::VectorXd bs_rx_gain;  // size M
  double sensor_tx_gain = 1.0;
  double sensor_loss = 1.0;

  double tradeoff = 0.0;     // lambda >= 0, sensor/AP power trade-off
  double outage_eps = 0.01;  // epsilon in (0,1)

  double tau = 1e-4;  // outer-loop relative-improvement stop threshold
  int max_iters = 200;
  std::uint64_t seed = 1;
};

struct ValidationResult {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

// Reports every violated invariant, not just the first.
ValidationResult validate_config(const ScenarioConfig& cfg);

// Per-link physical coefficients (Watts / m^2):
//   a[n]    = sigma B (4 pi)^2 L_sensor / (G_t_sensor G_rn lambda_c^2)
//   b[n][m] = sigma B (4 pi)^2 L_n      / (G_tn      G_rm lambda_c^2)
struct LinkCoefficients {
  Eigen::VectorXd a;  // N
  Eigen::MatrixXd b;  // N x M
};

// Pure function of the config; throws std::invalid_argument on nonpositive
// gains or losses.
LinkCoefficients derive_coefficients(const ScenarioConfig& cfg);

// AP positions P (N x 2) and BS positions Q (M x 2), meters.
struct Deployment {
  Eigen::MatrixX2d p;
  Eigen::MatrixX2d q;
};

// AP -> BS flows (bits/s) and their row-normalized ratios.
struct FlowMatrix {
  Eigen::MatrixXd f;                    // N x M, bits/s
  Eigen::MatrixXd r;                    // N x M, rows sum to 1 or are all 0
  std::vector<std::uint8_t> degenerate_row;  // rows with zero out-flow
};

// r[n][m] = f[n][m] / sum_j f[n][j]; zero rows get r = 0 and the degenerate
// flag.  Negative flow is rejected.
FlowMatrix normalized_flow(Eigen::MatrixXd f);

// Rebuilds the flow matrix from normalized flows and region volumes:
// F[n][m] = r[n][m] * R_b * v[n].
Eigen::MatrixXd flows_from(const Eigen::MatrixXd& r, const Eigen::VectorXd& vols,
                           double rb_bps);

}  // namespace wsn
