#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "wsn/density_grid.hpp"

namespace wsn {

// Per-region volume (sensors), mass centroid, and second moment about the
// centroid (sum of mass * ||w - c||^2).  Zero-volume regions keep the
// fallback position as centroid and are flagged degenerate.
struct RegionStats {
  Eigen::VectorXd vols;
  Eigen::MatrixX2d cents;
  Eigen::VectorXd second_moment;
  std::vector<std::uint8_t> degenerate;
};

// Cell-to-AP assignment over the in-region cells plus cached statistics.
struct Partition {
  int n_regions = 0;
  Eigen::VectorXi owner;  // nx*ny; -1 outside the region
  RegionStats stats;
};

RegionStats region_stats(const Eigen::VectorXi& owner, const DensityGrid& grid,
                         int n_regions, const Eigen::MatrixX2d& fallback_positions);

// Multiplicatively weighted Voronoi assignment: cell w belongs to the AP
// minimizing a_n ||p_n - w||^2, ties to the lowest index.
Partition weighted_voronoi_assign(const Eigen::MatrixX2d& p,
                                  const Eigen::VectorXd& a,
                                  const DensityGrid& grid);

// Unordered pairs (i < j) whose regions share a 4-adjacent cell edge.
std::vector<std::pair<int, int>> neighbors(const Partition& part,
                                           const DensityGrid& grid);

// Outcome of re-splitting the union of two regions along the weighted locus
// through h = alpha*p_i + (1-alpha)*p_j.
struct SplitResult {
  std::vector<int> cells;            // union cell indices
  std::vector<std::uint8_t> to_i;    // per union cell, 1 if assigned to i
  double v_i = 0, v_j = 0;
  Vec2 m1_i = Vec2::Zero(), m1_j = Vec2::Zero();  // sum mass * w
  double m2_i = 0, m2_j = 0;                      // sum mass * ||w||^2
};

// Cells of regions i and j, in grid order.
std::vector<int> collect_union(const Partition& part, const DensityGrid& grid,
                               int i, int j);

// Split over a precollected union (line-search fast path).  A union cell w
// goes to i iff
//   a_i||p_i - w||^2 - a_j||p_j - w||^2 <= a_i||p_i - h||^2 - a_j||p_j - h||^2
// with ties to i.
SplitResult split_cells(std::span<const int> cells, int i, int j, double alpha,
                        const Eigen::MatrixX2d& p, const Eigen::VectorXd& a,
                        const DensityGrid& grid);

// Standalone variant: collects the union itself and rejects non-neighbor
// pairs with std::invalid_argument.
SplitResult split_union(int i, int j, double alpha, const Eigen::MatrixX2d& p,
                        const Eigen::VectorXd& a, const Partition& part,
                        const DensityGrid& grid);

// Commits a split: rewrites ownership of the union cells and refreshes the
// cached stats of regions i and j from the split aggregates.
void apply_split(Partition& part, const SplitResult& split, int i, int j,
                 const Eigen::MatrixX2d& fallback_positions);

// Region indices that are 4-connectivity disconnected (possible with
// weighted boundaries and zero-mass bands; permitted, but worth noting).
std::vector<int> disconnected_regions(const Partition& part,
                                      const DensityGrid& grid);

}  // namespace wsn
