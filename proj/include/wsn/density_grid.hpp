#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "wsn/scenario.hpp"

namespace wsn {

// Discretized sensor density: a regular grid over the region's bounding box
// with per-cell mass (sensors).  Cells whose center falls outside the region
// carry zero mass and are excluded from partitions.
struct DensityGrid {
  int nx = 0, ny = 0;
  double x0 = 0, y0 = 0;        // bounding-box origin
  double cell_w = 0, cell_h = 0;
  Eigen::ArrayXd mass;          // nx*ny, row-major (iy*nx + ix)
  std::vector<std::uint8_t> inside;  // same layout
  std::vector<int> region_cells;     // flattened indices of in-region cells
  double total_mass = 0;

  int index(int ix, int iy) const { return iy * nx + ix; }
  Vec2 center(int idx) const {
    const int iy = idx / nx, ix = idx % nx;
    return {x0 + (ix + 0.5) * cell_w, y0 + (iy + 0.5) * cell_h};
  }
  double cell_area() const { return cell_w * cell_h; }
};

// Riemann-sum discretization of the scenario density at cell centers.
// Uniform densities are spread exactly over the in-region cells so the total
// matches the requested sensor count.
DensityGrid build_density_grid(const ScenarioConfig& cfg);

}  // namespace wsn
