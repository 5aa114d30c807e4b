#include "wsn/density_grid.hpp"

#include <stdexcept>

namespace wsn {

DensityGrid build_density_grid(const ScenarioConfig& cfg) {
  if (cfg.grid < 2) throw std::invalid_argument("build_density_grid: grid < 2");
  if (cfg.region.empty())
    throw std::invalid_argument("build_density_grid: empty region");

  DensityGrid g;
  g.nx = cfg.grid;
  g.ny = cfg.grid;
  const auto& box = cfg.region.bounding_box();
  g.x0 = box.min().x();
  g.y0 = box.min().y();
  g.cell_w = (box.max().x() - box.min().x()) / g.nx;
  g.cell_h = (box.max().y() - box.min().y()) / g.ny;
  g.mass = Eigen::ArrayXd::Zero(Eigen::Index(g.nx) * g.ny);
  g.inside.assign(size_t(g.nx) * size_t(g.ny), 0);

  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const int idx = g.index(ix, iy);
      if (cfg.region.contains(g.center(idx))) {
        g.inside[static_cast<size_t>(idx)] = 1;
        g.region_cells.push_back(idx);
      }
    }
  }
  if (g.region_cells.empty())
    throw std::invalid_argument("build_density_grid: no cell center inside region");

  switch (cfg.density.kind) {
    case DensitySpec::Kind::Uniform: {
      const double per_cell =
          cfg.density.uniform_total / static_cast<double>(g.region_cells.size());
      for (int idx : g.region_cells) g.mass[idx] = per_cell;
      break;
    }
    case DensitySpec::Kind::Samples: {
      const auto& s = cfg.density.samples;
      if (s.rows() != g.ny || s.cols() != g.nx)
        throw std::invalid_argument("build_density_grid: samples shape mismatch");
      const double area = g.cell_area();
      for (int idx : g.region_cells) {
        const int iy = idx / g.nx, ix = idx % g.nx;
        const double f = s(iy, ix);
        if (f < 0)
          throw std::invalid_argument("build_density_grid: negative density");
        g.mass[idx] = f * area;
      }
      break;
    }
  }
  g.total_mass = g.mass.sum();
  return g;
}

}  // namespace wsn
