#include "wsn/power.hpp"

#include <cmath>
#include <numbers>

#include "wsn/special_functions.hpp"

namespace wsn {

namespace {
inline double outage_scale(double eps) { return -std::log1p(-eps); }  // ln(1/(1-eps))
inline double pow2m1(double x) { return std::expm1(x * std::numbers::ln2); }
}  // namespace

double outage_link_power_ap(double b, double distance_m, double flow_bps,
                            double bandwidth_hz, double eps) {
  if (flow_bps <= 0) return 0;
  return b / outage_scale(eps) * distance_m * distance_m *
         pow2m1(flow_bps / bandwidth_hz);
}

double outage_link_power_sensor(double a, double distance_m, double rb_bps,
                                double bandwidth_hz, double eps) {
  return a / outage_scale(eps) * distance_m * distance_m *
         pow2m1(rb_bps / bandwidth_hz);
}

double ergodic_link_power_ap(double b, double distance_m, double flow_bps,
                             double bandwidth_hz) {
  if (flow_bps <= 0) return 0;  // U^{-1}(y) -> inf as y -> 0+
  const double y = flow_bps / (bandwidth_hz * std::numbers::log2e);
  return b * distance_m * distance_m / num::u_inverse(y);
}

double ergodic_link_power_sensor(double a, double distance_m, double rb_bps,
                                 double bandwidth_hz) {
  const double y = rb_bps / (bandwidth_hz * std::numbers::log2e);
  return a * distance_m * distance_m / num::u_inverse(y);
}

namespace {

// Sum over regions of coef_n * (second moment about the AP), via the
// parallel axis identity: sum m ||p - w||^2 = M2_c + v ||p - c||^2.
double sensor_quadratic(const Deployment& dep, const Partition& part,
                        const Eigen::VectorXd& per_region_coef) {
  double acc = 0;
  for (int n = 0; n < part.n_regions; ++n) {
    if (part.stats.vols[n] <= 0) continue;
    const double moment =
        part.stats.second_moment[n] +
        part.stats.vols[n] *
            (dep.p.row(n) - part.stats.cents.row(n)).squaredNorm();
    acc += per_region_coef[n] * moment;
  }
  return acc;
}

}  // namespace

PowerBreakdown d1_total(const Deployment& dep, const Partition& part,
                        const Eigen::MatrixXd& flows, const ScenarioConfig& cfg,
                        const LinkCoefficients& coef) {
  const double scale = outage_scale(cfg.outage_eps);
  const double rate_term = pow2m1(cfg.rb_bps / cfg.bandwidth_hz);

  PowerBreakdown out;
  out.sensor_power =
      sensor_quadratic(dep, part, (coef.a * (rate_term / scale)).eval());
  for (Eigen::Index n = 0; n < flows.rows(); ++n)
    for (Eigen::Index m = 0; m < flows.cols(); ++m)
      out.ap_power += outage_link_power_ap(
          coef.b(n, m), (dep.q.row(m) - dep.p.row(n)).norm(), flows(n, m),
          cfg.bandwidth_hz, cfg.outage_eps);
  out.weighted_total = out.sensor_power + cfg.tradeoff * out.ap_power;
  return out;
}

PowerBreakdown d2_total(const Deployment& dep, const Partition& part,
                        const Eigen::MatrixXd& flows, const ScenarioConfig& cfg,
                        const LinkCoefficients& coef) {
  const double y_sensor =
      cfg.rb_bps / (cfg.bandwidth_hz * std::numbers::log2e);
  const double inv_u = 1.0 / num::u_inverse(y_sensor);

  PowerBreakdown out;
  out.sensor_power = sensor_quadratic(dep, part, (coef.a * inv_u).eval());
  for (Eigen::Index n = 0; n < flows.rows(); ++n)
    for (Eigen::Index m = 0; m < flows.cols(); ++m)
      out.ap_power += ergodic_link_power_ap(
          coef.b(n, m), (dep.q.row(m) - dep.p.row(n)).norm(), flows(n, m),
          cfg.bandwidth_hz);
  out.weighted_total = out.sensor_power + cfg.tradeoff * out.ap_power;
  return out;
}

double d2_upper(const Deployment& dep, const Eigen::MatrixXd& flows,
                const ScenarioConfig& cfg, const LinkCoefficients& coef) {
  double acc = 0;
  for (Eigen::Index n = 0; n < flows.rows(); ++n)
    for (Eigen::Index m = 0; m < flows.cols(); ++m) {
      const double d2 = (dep.q.row(m) - dep.p.row(n)).squaredNorm();
      const double y =
          2.0 * flows(n, m) / (cfg.bandwidth_hz * std::numbers::log2e);
      acc += coef.b(n, m) * d2 * 0.5 * std::expm1(y);
    }
  return acc;
}

}  // namespace wsn
