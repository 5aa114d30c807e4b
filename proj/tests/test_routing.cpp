#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "wsn/oracle.hpp"
#include "wsn/routing.hpp"

using namespace wsn;

TEST_CASE("single base station takes the whole budget") {
  Eigen::MatrixX2d q(1, 2);
  q << 4000, 4000;
  Eigen::VectorXd b(1);
  b << 2e-11;
  const Vec2 p(1000, 1000);
  const Eigen::VectorXd f_out = waterfill_outage(p, q, b, 70.0, 3e4, 5e5);
  CHECK(f_out[0] == doctest::Approx(3e4 * 70.0));
  const Eigen::VectorXd f_erg = waterfill_ergodic(p, q, b, 70.0, 3e4, 5e5);
  CHECK(f_erg[0] == doctest::Approx(3e4 * 70.0));
}

TEST_CASE("symmetric two-link instance splits evenly") {
  Eigen::MatrixX2d q(2, 2);
  q << 2000, 5000, 8000, 5000;
  const Vec2 p(5000, 5000);
  const Eigen::VectorXd b = Eigen::VectorXd::Constant(2, 1.5e-11);
  for (const bool ergodic : {false, true}) {
    const Eigen::VectorXd f =
        ergodic ? waterfill_ergodic(p, q, b, 100.0, 3e4, 5e5)
                : waterfill_outage(p, q, b, 100.0, 3e4, 5e5);
    CHECK(f[0] == doctest::Approx(f[1]).epsilon(1e-12));
    CHECK(f.sum() == doctest::Approx(3e6).epsilon(1e-12));
  }
}

TEST_CASE("hand-traced outage instance: costly link excluded") {
  // Unit bandwidth, budget 2, log2 costs [0, 3]:
  // level starts at (2 + 0 + 3)/2 = 2.5, link 2 excluded, final level 2.
  Eigen::MatrixX2d q(2, 2);
  q << 1, 0, 0, 1;  // both at distance 1 from the origin
  Eigen::VectorXd b(2);
  b << 1.0, 8.0;  // log2 costs 0 and 3
  const Vec2 p(0, 0);
  const Eigen::VectorXd f = waterfill_outage(p, q, b, 2.0, 1.0, 1.0);
  CHECK(f[0] == doctest::Approx(2.0));
  CHECK(f[1] == 0.0);
}

TEST_CASE("zero volume yields a zero row without error") {
  Eigen::MatrixX2d q(3, 2);
  q << 1000, 0, 0, 1000, 500, 500;
  const Eigen::VectorXd b = Eigen::VectorXd::Constant(3, 1e-11);
  const Eigen::VectorXd f = waterfill_outage(Vec2(0, 0), q, b, 0.0, 3e4, 5e5);
  CHECK(f.isZero());
}

TEST_CASE("waterfill structure: common level, costlier links idle") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int inst = 0; inst < 50; ++inst) {
    const int m_count = 1 + static_cast<int>(u(rng) * 4);
    Eigen::MatrixX2d q(m_count, 2);
    Eigen::VectorXd b(m_count);
    for (int m = 0; m < m_count; ++m) {
      q.row(m) << u(rng) * 10000, u(rng) * 10000;
      b[m] = std::pow(10.0, -12 + 4 * u(rng));
    }
    const Vec2 p(u(rng) * 10000, u(rng) * 10000);
    const double v = u(rng) * 200;
    const bool ergodic = inst % 2 == 0;
    const Eigen::VectorXd f = ergodic
                                  ? waterfill_ergodic(p, q, b, v, 3e4, 5e5)
                                  : waterfill_outage(p, q, b, v, 3e4, 5e5);

    // Exact conservation.
    CHECK(f.sum() == doctest::Approx(3e4 * v).epsilon(1e-14));
    CHECK((f.array() >= 0).all());

    const Eigen::VectorXd costs =
        ergodic ? ergodic_costs(p, q, b) : outage_costs(p, q, b);
    const double scale =
        ergodic ? 5e5 * std::numbers::log2e / 2.0 : 5e5;
    double level = -std::numeric_limits<double>::infinity();
    for (int m = 0; m < m_count; ++m)
      if (f[m] > 0) level = std::max(level, f[m] / scale + costs[m]);
    for (int m = 0; m < m_count; ++m) {
      if (f[m] > 0) {
        CHECK(f[m] / scale + costs[m] ==
              doctest::Approx(level).epsilon(1e-9));
      } else if (std::isfinite(level)) {
        CHECK(costs[m] >= level * (1 - 1e-12) - 1e-12);
      }
    }
  }
}

TEST_CASE("uniform cost shifts leave the split unchanged") {
  Eigen::MatrixX2d q(3, 2);
  q << 1000, 2000, 7000, 6000, 4000, 9000;
  Eigen::VectorXd b(3);
  b << 2e-11, 5e-12, 1.1e-11;
  const Vec2 p(3000, 3000);
  const Eigen::VectorXd base = waterfill_outage(p, q, b, 150.0, 3e4, 5e5);
  const Eigen::VectorXd scaled =
      waterfill_outage(p, q, (b * 64.0).eval(), 150.0, 3e4, 5e5);
  for (int m = 0; m < 3; ++m)
    CHECK(base[m] == doctest::Approx(scaled[m]).epsilon(1e-9));
}

TEST_CASE("waterfill matches the simplex-grid oracle") {
  Eigen::MatrixX2d q(3, 2);
  q << 500, 1000, 9000, 2000, 5000, 8000;
  Eigen::VectorXd b(3);
  b << 1e-11, 4e-11, 2.5e-12;
  const Vec2 p(2000, 4000);
  Eigen::VectorXd kappa(3);
  for (int m = 0; m < 3; ++m)
    kappa[m] = b[m] * (q.row(m).transpose() - p).squaredNorm();

  for (const Mode mode : {Mode::Pool, Mode::Peel}) {
    const double v = 120.0;
    const Eigen::VectorXd f = mode == Mode::Pool
                                  ? waterfill_outage(p, q, b, v, 3e4, 5e5)
                                  : waterfill_ergodic(p, q, b, v, 3e4, 5e5);
    const Eigen::VectorXd ref =
        oracle::routing_oracle(kappa, 3e4 * v, 5e5, mode, 0.005);
    const double ours = oracle::routing_objective(kappa, f, 5e5, mode);
    const double best = oracle::routing_objective(kappa, ref, 5e5, mode);
    CHECK(ours <= best * (1 + 1e-9));
    CHECK((best - ours) / best <= 1e-3);
  }
}
