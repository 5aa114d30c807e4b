#pragma once

#include <Eigen/Dense>

#include "wsn/partition.hpp"
#include "wsn/scenario.hpp"

namespace wsn {

struct PowerBreakdown {
  double sensor_power = 0;   // Watts
  double ap_power = 0;       // Watts
  double weighted_total = 0; // sensor_power + lambda * ap_power
};

// Required AP transmit power on one link under the outage constraint:
//   b / ln(1/(1-eps)) * d^2 * (2^(F/B) - 1).
double outage_link_power_ap(double b, double distance_m, double flow_bps,
                            double bandwidth_hz, double eps);

// Required transmit power of one sensor at the given distance from its AP:
//   a / ln(1/(1-eps)) * d^2 * (2^(R_b/B) - 1).
double outage_link_power_sensor(double a, double distance_m, double rb_bps,
                                double bandwidth_hz, double eps);

// Average AP transmit power sustaining flow F under Rayleigh fading:
//   b * d^2 / U^{-1}(F / (B log2 e)); 0 when F = 0.
double ergodic_link_power_ap(double b, double distance_m, double flow_bps,
                             double bandwidth_hz);

double ergodic_link_power_sensor(double a, double distance_m, double rb_bps,
                                 double bandwidth_hz);

// Outage-mode network power.  The sensor integral reuses the cached region
// moments (parallel-axis decomposition), the AP term sums link powers.
PowerBreakdown d1_total(const Deployment& dep, const Partition& part,
                        const Eigen::MatrixXd& flows, const ScenarioConfig& cfg,
                        const LinkCoefficients& coef);

// Ergodic-mode network power.
PowerBreakdown d2_total(const Deployment& dep, const Partition& part,
                        const Eigen::MatrixXd& flows, const ScenarioConfig& cfg,
                        const LinkCoefficients& coef);

// Upper bound on the ergodic AP power: sum b d^2 (e^(2F/(B log2 e)) - 1)/2.
double d2_upper(const Deployment& dep, const Eigen::MatrixXd& flows,
                const ScenarioConfig& cfg, const LinkCoefficients& coef);

}  // namespace wsn
