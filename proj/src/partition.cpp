#include "wsn/partition.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace wsn {

RegionStats region_stats(const Eigen::VectorXi& owner, const DensityGrid& grid,
                         int n_regions, const Eigen::MatrixX2d& fallback_positions) {
  RegionStats st;
  st.vols = Eigen::VectorXd::Zero(n_regions);
  st.cents = Eigen::MatrixX2d::Zero(n_regions, 2);
  st.second_moment = Eigen::VectorXd::Zero(n_regions);
  st.degenerate.assign(static_cast<size_t>(n_regions), 0);

  Eigen::MatrixX2d m1 = Eigen::MatrixX2d::Zero(n_regions, 2);
  Eigen::VectorXd m2 = Eigen::VectorXd::Zero(n_regions);
  for (int idx : grid.region_cells) {
    const int n = owner[idx];
    const double m = grid.mass[idx];
    const Vec2 w = grid.center(idx);
    st.vols[n] += m;
    m1.row(n) += m * w.transpose();
    m2[n] += m * w.squaredNorm();
  }
  for (int n = 0; n < n_regions; ++n) {
    if (st.vols[n] > 0) {
      const Vec2 c = m1.row(n).transpose() / st.vols[n];
      st.cents.row(n) = c.transpose();
      st.second_moment[n] = m2[n] - st.vols[n] * c.squaredNorm();
    } else {
      st.cents.row(n) = fallback_positions.row(n);
      st.degenerate[static_cast<size_t>(n)] = 1;
    }
  }
  return st;
}

Partition weighted_voronoi_assign(const Eigen::MatrixX2d& p,
                                  const Eigen::VectorXd& a,
                                  const DensityGrid& grid) {
  const int n_regions = static_cast<int>(p.rows());
  Partition part;
  part.n_regions = n_regions;
  part.owner = Eigen::VectorXi::Constant(Eigen::Index(grid.nx) * grid.ny, -1);
  for (int idx : grid.region_cells) {
    const Vec2 w = grid.center(idx);
    int best = 0;
    double best_cost = a[0] * (p.row(0).transpose() - w).squaredNorm();
    for (int n = 1; n < n_regions; ++n) {
      const double cost = a[n] * (p.row(n).transpose() - w).squaredNorm();
      if (cost < best_cost) {
        best_cost = cost;
        best = n;
      }
    }
    part.owner[idx] = best;
  }
  part.stats = region_stats(part.owner, grid, n_regions, p);
  return part;
}

std::vector<std::pair<int, int>> neighbors(const Partition& part,
                                           const DensityGrid& grid) {
  std::set<std::pair<int, int>> pairs;
  for (int idx : grid.region_cells) {
    const int own = part.owner[idx];
    const int ix = idx % grid.nx, iy = idx / grid.nx;
    if (ix + 1 < grid.nx) {
      const int o = part.owner[idx + 1];
      if (o >= 0 && o != own) pairs.insert({std::min(own, o), std::max(own, o)});
    }
    if (iy + 1 < grid.ny) {
      const int o = part.owner[idx + grid.nx];
      if (o >= 0 && o != own) pairs.insert({std::min(own, o), std::max(own, o)});
    }
  }
  return {pairs.begin(), pairs.end()};
}

std::vector<int> collect_union(const Partition& part, const DensityGrid& grid,
                               int i, int j) {
  std::vector<int> cells;
  for (int idx : grid.region_cells) {
    const int o = part.owner[idx];
    if (o == i || o == j) cells.push_back(idx);
  }
  return cells;
}

SplitResult split_cells(std::span<const int> cells, int i, int j, double alpha,
                        const Eigen::MatrixX2d& p, const Eigen::VectorXd& a,
                        const DensityGrid& grid) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("split: alpha outside [0,1]");
  const Vec2 pi = p.row(i);
  const Vec2 pj = p.row(j);
  const Vec2 h = alpha * pi + (1.0 - alpha) * pj;
  const double threshold =
      a[i] * (pi - h).squaredNorm() - a[j] * (pj - h).squaredNorm();

  SplitResult out;
  out.cells.assign(cells.begin(), cells.end());
  out.to_i.resize(cells.size());
  for (size_t k = 0; k < cells.size(); ++k) {
    const int idx = cells[k];
    const Vec2 w = grid.center(idx);
    const double g =
        a[i] * (pi - w).squaredNorm() - a[j] * (pj - w).squaredNorm();
    const bool to_i = g <= threshold;
    out.to_i[k] = to_i ? 1 : 0;
    const double m = grid.mass[idx];
    if (to_i) {
      out.v_i += m;
      out.m1_i += m * w;
      out.m2_i += m * w.squaredNorm();
    } else {
      out.v_j += m;
      out.m1_j += m * w;
      out.m2_j += m * w.squaredNorm();
    }
  }
  return out;
}

SplitResult split_union(int i, int j, double alpha, const Eigen::MatrixX2d& p,
                        const Eigen::VectorXd& a, const Partition& part,
                        const DensityGrid& grid) {
  const auto pairs = neighbors(part, grid);
  const auto key = std::make_pair(std::min(i, j), std::max(i, j));
  if (std::find(pairs.begin(), pairs.end(), key) == pairs.end())
    throw std::invalid_argument("split_union: regions are not neighbors");
  const auto cells = collect_union(part, grid, i, j);
  return split_cells(cells, i, j, alpha, p, a, grid);
}

void apply_split(Partition& part, const SplitResult& split, int i, int j,
                 const Eigen::MatrixX2d& fallback_positions) {
  for (size_t k = 0; k < split.cells.size(); ++k)
    part.owner[split.cells[k]] = split.to_i[k] ? i : j;

  auto refresh = [&](int n, double v, const Vec2& m1, double m2) {
    part.stats.vols[n] = v;
    if (v > 0) {
      const Vec2 c = m1 / v;
      part.stats.cents.row(n) = c.transpose();
      part.stats.second_moment[n] = m2 - v * c.squaredNorm();
      part.stats.degenerate[static_cast<size_t>(n)] = 0;
    } else {
      part.stats.cents.row(n) = fallback_positions.row(n);
      part.stats.second_moment[n] = 0;
      part.stats.degenerate[static_cast<size_t>(n)] = 1;
    }
  };
  refresh(i, split.v_i, split.m1_i, split.m2_i);
  refresh(j, split.v_j, split.m1_j, split.m2_j);
}

std::vector<int> disconnected_regions(const Partition& part,
                                      const DensityGrid& grid) {
  const int total = grid.nx * grid.ny;
  std::vector<int> component(static_cast<size_t>(total), -1);
  std::vector<int> pieces(static_cast<size_t>(part.n_regions), 0);
  std::vector<int> stack;
  for (int start : grid.region_cells) {
    if (component[start] >= 0) continue;
    const int own = part.owner[start];
    ++pieces[static_cast<size_t>(own)];
    component[start] = own;
    stack.assign(1, start);
    while (!stack.empty()) {
      const int idx = stack.back();
      stack.pop_back();
      const int ix = idx % grid.nx, iy = idx / grid.nx;
      const int steps[4] = {ix > 0 ? idx - 1 : -1, ix + 1 < grid.nx ? idx + 1 : -1,
                            iy > 0 ? idx - grid.nx : -1,
                            iy + 1 < grid.ny ? idx + grid.nx : -1};
      for (int nb : steps) {
        if (nb < 0 || component[nb] >= 0) continue;
        if (part.owner[nb] != own) continue;
        component[nb] = own;
        stack.push_back(nb);
      }
    }
  }
  std::vector<int> out;
  for (int n = 0; n < part.n_regions; ++n)
    if (pieces[static_cast<size_t>(n)] > 1) out.push_back(n);
  return out;
}

}  // namespace wsn
