#pragma once

#include <Eigen/Dense>

#include "wsn/geometry.hpp"

namespace wsn {

// Distances below this floor are clamped before taking logs, so an AP
// sitting exactly on a BS cannot produce a -inf cost.
inline constexpr double kDistanceFloorM = 1e-3;

// Per-BS log-domain costs for AP n.  Outage mode uses
// log2(b_{n,m} d^2), ergodic mode ln(b_{n,m} d^2).
Eigen::VectorXd outage_costs(const Vec2& p_n, const Eigen::MatrixX2d& q,
                             const Eigen::VectorXd& b_row);
Eigen::VectorXd ergodic_costs(const Vec2& p_n, const Eigen::MatrixX2d& q,
                              const Eigen::VectorXd& b_row);

// Water-filling core: minimizes sum_m base^(x_m + cost_m) over x_m >= 0 with
// sum_m x_m = budget.  Returns the per-link increments x_m; active links
// share the level C = x_m + cost_m, links with cost above the level carry 0.
// The level iteration tests set stability, not float equality, and the last
// active increment absorbs rounding so the sum is exact.
Eigen::VectorXd waterfill_levels(const Eigen::VectorXd& costs, double budget);

// Flow row for AP n under the outage-probability objective:
// minimizes sum_m b d^2 (2^(F/B) - 1) subject to sum F = R_b v_n, F >= 0.
Eigen::VectorXd waterfill_outage(const Vec2& p_n, const Eigen::MatrixX2d& q,
                                 const Eigen::VectorXd& b_row, double v_n,
                                 double rb_bps, double bandwidth_hz);

// Flow row for AP n under the ergodic upper-bound objective:
// minimizes sum_m b d^2 (e^(2F/(B log2 e)) - 1)/2 with the same constraints.
Eigen::VectorXd waterfill_ergodic(const Vec2& p_n, const Eigen::MatrixX2d& q,
                                  const Eigen::VectorXd& b_row, double v_n,
                                  double rb_bps, double bandwidth_hz);

}  // namespace wsn
