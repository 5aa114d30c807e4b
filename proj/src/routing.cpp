#include "wsn/routing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace wsn {

namespace {

Eigen::VectorXd link_weights(const Vec2& p_n, const Eigen::MatrixX2d& q,
                             const Eigen::VectorXd& b_row) {
  Eigen::VectorXd w(q.rows());
  for (Eigen::Index m = 0; m < q.rows(); ++m) {
    const double d =
        std::max((q.row(m).transpose() - p_n).norm(), kDistanceFloorM);
    w[m] = b_row[m] * d * d;
  }
  return w;
}

}  // namespace

Eigen::VectorXd outage_costs(const Vec2& p_n, const Eigen::MatrixX2d& q,
                             const Eigen::VectorXd& b_row) {
  return link_weights(p_n, q, b_row).array().log() / std::numbers::ln2;
}

Eigen::VectorXd ergodic_costs(const Vec2& p_n, const Eigen::MatrixX2d& q,
                              const Eigen::VectorXd& b_row) {
  return link_weights(p_n, q, b_row).array().log();
}

Eigen::VectorXd waterfill_levels(const Eigen::VectorXd& costs, double budget) {
  const int m_count = static_cast<int>(costs.size());
  if (m_count < 1) throw std::invalid_argument("waterfill_levels: empty costs");
  if (!(budget >= 0))
    throw std::invalid_argument("waterfill_levels: negative budget");

  const double total = budget + costs.sum();
  std::vector<std::uint8_t> excluded(static_cast<size_t>(m_count), 0);
  double level = total / m_count;
  for (int round = 0; round <= m_count; ++round) {
    bool changed = false;
    int active = 0;
    double active_cost_sum = 0;
    for (int m = 0; m < m_count; ++m) {
      const bool out = costs[m] > level;
      if (out != static_cast<bool>(excluded[static_cast<size_t>(m)])) changed = true;
      excluded[static_cast<size_t>(m)] = out ? 1 : 0;
      if (!out) {
        ++active;
        active_cost_sum += costs[m];
      }
    }
    if (!changed) break;
    // The cheapest link always satisfies cost <= level, so active >= 1.
    level = (budget + active_cost_sum) / active;
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(m_count);
  int biggest = -1;
  double assigned = 0;
  for (int m = 0; m < m_count; ++m) {
    if (excluded[static_cast<size_t>(m)]) continue;
    x[m] = std::max(level - costs[m], 0.0);
    assigned += x[m];
    if (biggest < 0 || x[m] > x[biggest]) biggest = m;
  }
  // Exact conservation: fold the rounding drift into the largest share,
  // where it cannot drive the entry negative.
  x[biggest] += budget - assigned;
  if (x[biggest] < 0) x[biggest] = 0;
  return x;
}

Eigen::VectorXd waterfill_outage(const Vec2& p_n, const Eigen::MatrixX2d& q,
                                 const Eigen::VectorXd& b_row, double v_n,
                                 double rb_bps, double bandwidth_hz) {
  if (v_n <= 0) return Eigen::VectorXd::Zero(q.rows());
  const double budget = rb_bps * v_n / bandwidth_hz;
  const Eigen::VectorXd x = waterfill_levels(outage_costs(p_n, q, b_row), budget);
  return x * bandwidth_hz;
}

Eigen::VectorXd waterfill_ergodic(const Vec2& p_n, const Eigen::MatrixX2d& q,
                                  const Eigen::VectorXd& b_row, double v_n,
                                  double rb_bps, double bandwidth_hz) {
  if (v_n <= 0) return Eigen::VectorXd::Zero(q.rows());
  const double scale = bandwidth_hz * std::numbers::log2e / 2.0;
  const double budget = rb_bps * v_n / scale;
  const Eigen::VectorXd x = waterfill_levels(ergodic_costs(p_n, q, b_row), budget);
  return x * scale;
}

}  // namespace wsn
