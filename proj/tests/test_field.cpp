#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "test_support.hpp"
#include "wsn/partition.hpp"

using namespace wsn;

namespace {

Partition assign(const Eigen::MatrixX2d& p, const Eigen::VectorXd& a,
                 const DensityGrid& grid) {
  return weighted_voronoi_assign(p, a, grid);
}

}  // namespace

TEST_CASE("density grid covers polygons and sample arrays") {
  ScenarioConfig cfg = test::make_small_config(1, 1, 50);
  cfg.region = ConvexRegion({{0, 0}, {10000, 0}, {0, 10000}});  // triangle
  const DensityGrid grid = build_density_grid(cfg);
  CHECK(grid.region_cells.size() < size_t(50 * 50));
  CHECK(grid.total_mass == doctest::Approx(cfg.density.uniform_total).epsilon(1e-12));
  for (int idx : grid.region_cells) CHECK(grid.mass[idx] >= 0);

  ScenarioConfig sampled = test::make_small_config(1, 1, 10);
  sampled.density.kind = DensitySpec::Kind::Samples;
  sampled.density.samples = Eigen::ArrayXXd::Constant(10, 10, 2e-6);
  const DensityGrid g2 = build_density_grid(sampled);
  // 2e-6 sensors/m^2 * (1e3 m)^2 per cell = 2 sensors per cell.
  CHECK(g2.mass[g2.region_cells[0]] == doctest::Approx(2.0));
  CHECK(g2.total_mass == doctest::Approx(200.0));
}

TEST_CASE("region_stats: single region owns everything") {
  const ScenarioConfig cfg = test::make_small_config(1, 1, 40);
  const DensityGrid grid = build_density_grid(cfg);
  Eigen::MatrixX2d p(1, 2);
  p << 1234, 5678;
  const Partition part = assign(p, Eigen::VectorXd::Ones(1), grid);
  CHECK(part.stats.vols[0] == doctest::Approx(grid.total_mass));
  CHECK(part.stats.cents(0, 0) == doctest::Approx(5000.0).epsilon(1e-9));
  CHECK(part.stats.cents(0, 1) == doctest::Approx(5000.0).epsilon(1e-9));
  for (int idx : grid.region_cells) CHECK(part.owner[idx] == 0);
}

TEST_CASE("region_stats: bisector split is symmetric") {
  const ScenarioConfig cfg = test::make_small_config(2, 1, 40);
  const DensityGrid grid = build_density_grid(cfg);
  Eigen::MatrixX2d p(2, 2);
  p << 2500, 5000, 7500, 5000;
  const Partition part = assign(p, Eigen::VectorXd::Ones(2), grid);
  CHECK(part.stats.vols[0] == doctest::Approx(part.stats.vols[1]).epsilon(1e-12));
  CHECK(part.stats.cents(0, 1) == doctest::Approx(part.stats.cents(1, 1)).epsilon(1e-9));
  CHECK(part.stats.cents(0, 0) ==
        doctest::Approx(10000.0 - part.stats.cents(1, 0)).epsilon(1e-9));
}

TEST_CASE("region_stats: volumes sum to total on random partitions") {
  const ScenarioConfig cfg = test::make_small_config(4, 1, 32);
  const DensityGrid grid = build_density_grid(cfg);
  std::mt19937_64 rng(21);
  Eigen::VectorXi owner = Eigen::VectorXi::Constant(grid.nx * grid.ny, -1);
  for (int idx : grid.region_cells) owner[idx] = static_cast<int>(rng() % 4);
  const RegionStats st = region_stats(owner, grid, 4, Eigen::MatrixX2d::Zero(4, 2));
  CHECK(st.vols.sum() == doctest::Approx(grid.total_mass).epsilon(1e-12));

  // Direct summation oracle for one region.
  double direct = 0;
  for (int idx : grid.region_cells)
    if (owner[idx] == 2) direct += grid.mass[idx];
  CHECK(st.vols[2] == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("region_stats: empty region keeps fallback position") {
  const ScenarioConfig cfg = test::make_small_config(2, 1, 20);
  const DensityGrid grid = build_density_grid(cfg);
  Eigen::VectorXi owner = Eigen::VectorXi::Constant(grid.nx * grid.ny, -1);
  for (int idx : grid.region_cells) owner[idx] = 0;
  Eigen::MatrixX2d fallback(2, 2);
  fallback << 0, 0, 4321, 999;
  const RegionStats st = region_stats(owner, grid, 2, fallback);
  CHECK(st.degenerate[1]);
  CHECK_FALSE(st.degenerate[0]);
  CHECK(st.cents(1, 0) == 4321);
  CHECK(st.vols[1] == 0);
}

TEST_CASE("weighted voronoi reduces to nearest neighbor for equal weights") {
  const ScenarioConfig cfg = test::make_small_config(3, 1, 30);
  const DensityGrid grid = build_density_grid(cfg);
  std::mt19937_64 rng(5);
  Eigen::MatrixX2d p(3, 2);
  for (int n = 0; n < 3; ++n)
    p.row(n) << (rng() % 10000), (rng() % 10000);
  const Partition weighted = assign(p, Eigen::VectorXd::Constant(3, 0.7), grid);
  for (int idx : grid.region_cells) {
    const Vec2 w = grid.center(idx);
    int nearest = 0;
    double best = (p.row(0).transpose() - w).squaredNorm();
    for (int n = 1; n < 3; ++n) {
      const double d = (p.row(n).transpose() - w).squaredNorm();
      if (d < best) {
        best = d;
        nearest = n;
      }
    }
    CHECK(weighted.owner[idx] == nearest);
  }
}

TEST_CASE("weighted voronoi matches the brute-force argmin and circle geometry") {
  const ScenarioConfig cfg = test::make_small_config(2, 1, 100);
  const DensityGrid grid = build_density_grid(cfg);
  Eigen::MatrixX2d p(2, 2);
  p << 3000, 5000, 6000, 5000;
  Eigen::VectorXd a(2);
  a << 1.0, 4.0;
  const Partition part = assign(p, a, grid);

  double mass_oracle_1 = 0;
  for (int idx : grid.region_cells) {
    const Vec2 w = grid.center(idx);
    const double c0 = a[0] * (p.row(0).transpose() - w).squaredNorm();
    const double c1 = a[1] * (p.row(1).transpose() - w).squaredNorm();
    const int expect = c1 < c0 ? 1 : 0;  // ties to the lower index
    CHECK(part.owner[idx] == expect);
    if (expect == 1) mass_oracle_1 += grid.mass[idx];
  }
  CHECK(part.stats.vols[1] == doctest::Approx(mass_oracle_1).epsilon(1e-12));

  // AP 2's region is enclosed by an Apollonius-type circle; its mass is the
  // smaller share.
  CHECK(part.stats.vols[1] < part.stats.vols[0]);
}

TEST_CASE("neighbors on simple layouts") {
  const ScenarioConfig cfg = test::make_small_config(3, 1, 30);
  const DensityGrid grid = build_density_grid(cfg);

  Eigen::MatrixX2d p1(1, 2);
  p1 << 5000, 5000;
  CHECK(neighbors(assign(p1, Eigen::VectorXd::Ones(1), grid), grid).empty());

  Eigen::MatrixX2d p2(2, 2);
  p2 << 2500, 5000, 7500, 5000;
  const auto pairs2 = neighbors(assign(p2, Eigen::VectorXd::Ones(2), grid), grid);
  REQUIRE(pairs2.size() == 1);
  CHECK(pairs2[0] == std::make_pair(0, 1));

  Eigen::MatrixX2d p3(3, 2);
  p3 << 1000, 5000, 5000, 5000, 9000, 5000;
  const auto pairs3 = neighbors(assign(p3, Eigen::VectorXd::Ones(3), grid), grid);
  REQUIRE(pairs3.size() == 2);
  CHECK(pairs3[0] == std::make_pair(0, 1));
  CHECK(pairs3[1] == std::make_pair(1, 2));
}

TEST_CASE("split_union: symmetric midpoint split balances volumes") {
  const ScenarioConfig cfg = test::make_small_config(2, 1, 40);
  const DensityGrid grid = build_density_grid(cfg);
  Eigen::MatrixX2d p(2, 2);
  p << 2500, 5000, 7500, 5000;
  const Eigen::VectorXd a = Eigen::VectorXd::Ones(2);
  const Partition part = assign(p, a, grid);
  const SplitResult s = split_union(0, 1, 0.5, p, a, part, grid);
  CHECK(s.v_i == doctest::Approx(s.v_j).epsilon(1e-12));
  CHECK(s.v_i + s.v_j ==
        doctest::Approx(part.stats.vols[0] + part.stats.vols[1]).epsilon(1e-12));
}

TEST_CASE("split_union: alpha = 0 hands the union to region i") {
  // Strip region with p_j close to the right edge, so no cell lies beyond it.
  ScenarioConfig cfg = test::make_small_config(2, 1, 100);
  cfg.region = ConvexRegion::rectangle(0, 0, 10000, 1000);
  const DensityGrid grid = build_density_grid(cfg);
  Eigen::MatrixX2d p(2, 2);
  p << 1000, 500, 9990, 500;
  const Eigen::VectorXd a = Eigen::VectorXd::Ones(2);
  const Partition part = assign(p, a, grid);
  const SplitResult s = split_union(0, 1, 0.0, p, a, part, grid);
  CHECK(s.v_j == 0.0);
  CHECK(s.v_i == doctest::Approx(grid.total_mass).epsilon(1e-12));
}

TEST_CASE("split_union: v_i is monotone along the h segment") {
  const ScenarioConfig cfg = test::make_small_config(2, 1, 50);
  const DensityGrid grid = build_density_grid(cfg);
  std::mt19937_64 rng(31);
  Eigen::MatrixX2d p(2, 2);
  p << 2000 + double(rng() % 2000), 3000, 6000, 4000 + double(rng() % 2000);
  Eigen::VectorXd a(2);
  a << 1.0, 2.5;
  const Partition part = assign(p, a, grid);
  const auto cells = collect_union(part, grid, 0, 1);
  // h(0) = p_j, h(1) = p_i: region i absorbs most of the union at alpha = 0
  // and cedes it as alpha grows, so v_i is nonincreasing in alpha.
  double prev = std::numeric_limits<double>::infinity();
  const double total = part.stats.vols[0] + part.stats.vols[1];
  for (int k = 0; k <= 50; ++k) {
    const double alpha = k / 50.0;
    const SplitResult s = split_cells(cells, 0, 1, alpha, p, a, grid);
    CHECK(s.v_i <= prev + 1e-12 * total);
    CHECK(s.v_i + s.v_j == doctest::Approx(total).epsilon(1e-12));
    prev = s.v_i;
  }
}

TEST_CASE("split_union: unequal weights produce a circular boundary") {
  const ScenarioConfig cfg = test::make_small_config(2, 1, 100);
  const DensityGrid grid = build_density_grid(cfg);
  Eigen::MatrixX2d p(2, 2);
  p << 3000, 5000, 6000, 5000;
  Eigen::VectorXd a(2);
  a << 1.0, 4.0;
  const Partition part = assign(p, a, grid);
  const SplitResult s = split_union(0, 1, 0.5, p, a, part, grid);

  // Cells on side j adjacent to side i lie on a circle centered at
  // (a_i p_i - a_j p_j) / (a_i - a_j) = (7000, 5000).
  std::vector<int> side(static_cast<size_t>(grid.nx * grid.ny), -1);
  for (size_t k = 0; k < s.cells.size(); ++k) side[s.cells[k]] = s.to_i[k];
  std::vector<Vec2> boundary;
  for (size_t k = 0; k < s.cells.size(); ++k) {
    if (s.to_i[k] != 0) continue;
    const int idx = s.cells[k];
    const int ix = idx % grid.nx, iy = idx / grid.nx;
    const int nbs[4] = {ix > 0 ? idx - 1 : -1, ix + 1 < grid.nx ? idx + 1 : -1,
                        iy > 0 ? idx - grid.nx : -1,
                        iy + 1 < grid.ny ? idx + grid.nx : -1};
    for (int nb : nbs)
      if (nb >= 0 && side[nb] == 1) {
        boundary.push_back(grid.center(idx));
        break;
      }
  }
  REQUIRE(boundary.size() > 20);

  // Kasa circle fit: solve [2x 2y 1] [cx cy t]' = x^2 + y^2 in least squares.
  Eigen::MatrixXd sys(boundary.size(), 3);
  Eigen::VectorXd rhs(boundary.size());
  for (size_t k = 0; k < boundary.size(); ++k) {
    sys(static_cast<Eigen::Index>(k), 0) = 2 * boundary[k].x();
    sys(static_cast<Eigen::Index>(k), 1) = 2 * boundary[k].y();
    sys(static_cast<Eigen::Index>(k), 2) = 1;
    rhs[static_cast<Eigen::Index>(k)] = boundary[k].squaredNorm();
  }
  const Eigen::Vector3d sol = sys.colPivHouseholderQr().solve(rhs);
  const double cell_diag = std::hypot(grid.cell_w, grid.cell_h);
  CHECK(std::abs(sol[0] - 7000.0) < cell_diag);
  CHECK(std::abs(sol[1] - 5000.0) < cell_diag);
}

TEST_CASE("split_union rejects non-neighbors") {
  const ScenarioConfig cfg = test::make_small_config(3, 1, 30);
  const DensityGrid grid = build_density_grid(cfg);
  Eigen::MatrixX2d p(3, 2);
  p << 1000, 5000, 5000, 5000, 9000, 5000;
  const Eigen::VectorXd a = Eigen::VectorXd::Ones(3);
  const Partition part = assign(p, a, grid);
  CHECK_THROWS_AS(split_union(0, 2, 0.5, p, a, part, grid), std::invalid_argument);
}

TEST_CASE("apply_split keeps stats consistent with a full recompute") {
  const ScenarioConfig cfg = test::make_small_config(3, 1, 40);
  const DensityGrid grid = build_density_grid(cfg);
  Eigen::MatrixX2d p(3, 2);
  p << 2000, 2000, 8000, 3000, 5000, 8000;
  const Eigen::VectorXd a = Eigen::VectorXd::Ones(3);
  Partition part = assign(p, a, grid);
  const SplitResult s = split_union(0, 1, 0.3, p, a, part, grid);
  apply_split(part, s, 0, 1, p);
  const RegionStats ref = region_stats(part.owner, grid, 3, p);
  for (int n = 0; n < 3; ++n) {
    CHECK(part.stats.vols[n] == doctest::Approx(ref.vols[n]).epsilon(1e-12));
    CHECK(part.stats.second_moment[n] ==
          doctest::Approx(ref.second_moment[n]).epsilon(1e-9));
  }
}
