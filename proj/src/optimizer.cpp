#include "wsn/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "wsn/routing.hpp"

namespace wsn {

namespace {

inline double pow2m1(double x) { return std::expm1(x * std::numbers::ln2); }

Eigen::MatrixX2d clamp_to_box(Eigen::MatrixX2d pts, const Eigen::AlignedBox2d& box) {
  for (Eigen::Index k = 0; k < pts.rows(); ++k) {
    pts(k, 0) = std::clamp(pts(k, 0), box.min().x(), box.max().x());
    pts(k, 1) = std::clamp(pts(k, 1), box.min().y(), box.max().y());
  }
  return pts;
}

Eigen::MatrixX2d sample_in_region(const ConvexRegion& region, int count,
                                  std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(region.bounding_box().min().x(),
                                            region.bounding_box().max().x());
  std::uniform_real_distribution<double> uy(region.bounding_box().min().y(),
                                            region.bounding_box().max().y());
  Eigen::MatrixX2d pts(count, 2);
  for (int k = 0; k < count;) {
    const Vec2 cand(ux(rng), uy(rng));
    if (region.contains(cand)) {
      pts.row(k) = cand.transpose();
      ++k;
    }
  }
  return pts;
}

// Weighted quantization cost sum_n a_n * integral over W_n of ||p_n - w||^2.
double weighted_quantization_cost(const Eigen::MatrixX2d& p,
                                  const Partition& part,
                                  const Eigen::VectorXd& a) {
  double acc = 0;
  for (int n = 0; n < part.n_regions; ++n) {
    if (part.stats.vols[n] <= 0) continue;
    acc += a[n] * (part.stats.second_moment[n] +
                   part.stats.vols[n] *
                       (p.row(n) - part.stats.cents.row(n)).squaredNorm());
  }
  return acc;
}

}  // namespace

Eigen::MatrixXd state_flows(const SolverState& st) {
  return flows_from(st.r, st.part.stats.vols, st.cfg.rb_bps);
}

PowerBreakdown state_power(const SolverState& st, Mode mode) {
  const Eigen::MatrixXd f = state_flows(st);
  return mode == Mode::Pool ? d1_total(st.dep, st.part, f, st.cfg, st.coef)
                            : d2_total(st.dep, st.part, f, st.cfg, st.coef);
}

LloydInit init_weighted_lloyd(const ScenarioConfig& cfg,
                              const LinkCoefficients& coef,
                              const DensityGrid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  LloydInit out;
  out.p = sample_in_region(cfg.region, cfg.n_aps, rng);
  const double move_tol = 1e-6 * cfg.region.diameter();
  for (out.rounds = 0; out.rounds < 500; ++out.rounds) {
    out.part = weighted_voronoi_assign(out.p, coef.a, grid);
    out.dprime.push_back(weighted_quantization_cost(out.p, out.part, coef.a));
    double max_move = 0;
    for (int n = 0; n < cfg.n_aps; ++n) {
      if (out.part.stats.degenerate[static_cast<size_t>(n)]) continue;
      const Vec2 c = out.part.stats.cents.row(n);
      max_move = std::max(max_move, (c.transpose() - out.p.row(n)).norm());
      out.p.row(n) = c.transpose();
    }
    if (max_move < move_tol) break;
  }
  out.part = weighted_voronoi_assign(out.p, coef.a, grid);
  out.dprime.push_back(weighted_quantization_cost(out.p, out.part, coef.a));
  return out;
}

Eigen::MatrixX2d init_bs_lloyd(const Eigen::MatrixX2d& p, int n_bss,
                               std::uint64_t seed) {
  const int n = static_cast<int>(p.rows());
  Eigen::MatrixX2d q(n_bss, 2);
  if (n_bss >= n) {
    for (int k = 0; k < n_bss; ++k) q.row(k) = p.row(k % n);
    return q;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // k-means++ style seeding over the AP points.
  std::vector<int> chosen;
  chosen.push_back(static_cast<int>(unit(rng) * n) % n);
  Eigen::VectorXd dist2 = Eigen::VectorXd::Constant(n, 0);
  for (int i = 0; i < n; ++i)
    dist2[i] = (p.row(i) - p.row(chosen[0])).squaredNorm();
  while (static_cast<int>(chosen.size()) < n_bss) {
    const double total = dist2.sum();
    int pick = 0;
    if (total > 0) {
      double u = unit(rng) * total;
      for (; pick < n - 1; ++pick) {
        u -= dist2[pick];
        if (u <= 0) break;
      }
    }
    chosen.push_back(pick);
    for (int i = 0; i < n; ++i)
      dist2[i] = std::min(dist2[i], (p.row(i) - p.row(pick)).squaredNorm());
  }
  for (int k = 0; k < n_bss; ++k) q.row(k) = p.row(chosen[static_cast<size_t>(k)]);

  std::vector<int> assign(static_cast<size_t>(n), -1);
  for (int round = 0; round < 200; ++round) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (p.row(i) - q.row(0)).squaredNorm();
      for (int k = 1; k < n_bss; ++k) {
        const double d = (p.row(i) - q.row(k)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = k;
        }
      }
      if (assign[static_cast<size_t>(i)] != best) changed = true;
      assign[static_cast<size_t>(i)] = best;
    }
    if (!changed && round > 0) break;
    for (int k = 0; k < n_bss; ++k) {
      Vec2 mean = Vec2::Zero();
      int count = 0;
      for (int i = 0; i < n; ++i)
        if (assign[static_cast<size_t>(i)] == k) {
          mean += p.row(i).transpose();
          ++count;
        }
      if (count > 0) {
        q.row(k) = (mean / count).transpose();
      } else {
        // Empty cluster: restart the center on the AP farthest from its own.
        int far = 0;
        double far_d = -1;
        for (int i = 0; i < n; ++i) {
          const double d =
              (p.row(i) - q.row(assign[static_cast<size_t>(i)])).squaredNorm();
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        q.row(k) = p.row(far);
      }
    }
  }
  return q;
}

Deployment pool_position_update(const RegionStats& stats,
                                const Eigen::MatrixXd& flows,
                                const Deployment& dep, const ScenarioConfig& cfg,
                                const LinkCoefficients& coef) {
  const int n_aps = static_cast<int>(dep.p.rows());
  const int n_bss = static_cast<int>(dep.q.rows());
  const double rate_term = pow2m1(cfg.rb_bps / cfg.bandwidth_hz);
  Deployment out = dep;

  for (int n = 0; n < n_aps; ++n) {
    const double ws = coef.a[n] * rate_term * stats.vols[n];
    Eigen::RowVector2d num = ws * stats.cents.row(n);
    double den = ws;
    for (int m = 0; m < n_bss; ++m) {
      const double w = cfg.tradeoff * coef.b(n, m) *
                       pow2m1(flows(n, m) / cfg.bandwidth_hz);
      num += w * dep.q.row(m);
      den += w;
    }
    if (den > 0) out.p.row(n) = num / den;
  }
  for (int m = 0; m < n_bss; ++m) {
    Eigen::RowVector2d num = Eigen::RowVector2d::Zero();
    double den = 0;
    for (int n = 0; n < n_aps; ++n) {
      const double w = coef.b(n, m) * pow2m1(flows(n, m) / cfg.bandwidth_hz);
      num += w * out.p.row(n);
      den += w;
    }
    if (den > 0) out.q.row(m) = num / den;
  }
  out.p = clamp_to_box(out.p, cfg.region.bounding_box());
  out.q = clamp_to_box(out.q, cfg.region.bounding_box());
  return out;
}

Deployment peel_position_update(const RegionStats& stats,
                                const Eigen::MatrixXd& flows,
                                const Deployment& dep, const ScenarioConfig& cfg,
                                const LinkCoefficients& coef) {
  const int n_aps = static_cast<int>(dep.p.rows());
  const int n_bss = static_cast<int>(dep.q.rows());
  const double log2e_b = cfg.bandwidth_hz * std::numbers::log2e;
  const double inv_u_sensor = 1.0 / num::u_inverse(cfg.rb_bps / log2e_b);
  Deployment out = dep;

  auto link_weight = [&](int n, int m) {
    if (flows(n, m) <= 0) return 0.0;  // U^{-1} -> inf, weight vanishes
    return coef.b(n, m) / num::u_inverse(flows(n, m) / log2e_b);
  };

  for (int n = 0; n < n_aps; ++n) {
    const double ws = coef.a[n] * stats.vols[n] * inv_u_sensor;
    Eigen::RowVector2d num = ws * stats.cents.row(n);
    double den = ws;
    for (int m = 0; m < n_bss; ++m) {
      const double w = cfg.tradeoff * link_weight(n, m);
      num += w * dep.q.row(m);
      den += w;
    }
    if (den > 0) out.p.row(n) = num / den;
  }
  for (int m = 0; m < n_bss; ++m) {
    Eigen::RowVector2d num = Eigen::RowVector2d::Zero();
    double den = 0;
    for (int n = 0; n < n_aps; ++n) {
      const double w = link_weight(n, m);
      num += w * out.p.row(n);
      den += w;
    }
    if (den > 0) out.q.row(m) = num / den;
  }
  out.p = clamp_to_box(out.p, cfg.region.bounding_box());
  out.q = clamp_to_box(out.q, cfg.region.bounding_box());
  return out;
}

namespace {

// Fixed data for one boundary line search over alpha.
struct PairContext {
  int i, j;
  std::vector<int> cells;
  // v-dependent AP terms: sum_t kappa[t] * phi(gain[t] * v)
  Eigen::VectorXd kappa_i, kappa_j, gain_i, gain_j;
  double sensor_i = 0, sensor_j = 0;  // coefficient on ||p - h||^2
};

PairContext make_context(int i, int j, const SolverState& st, Mode mode,
                         std::vector<int> cells) {
  const auto& cfg = st.cfg;
  const int n_bss = cfg.n_bss;
  PairContext ctx;
  ctx.i = i;
  ctx.j = j;
  ctx.cells = std::move(cells);
  ctx.kappa_i.resize(n_bss);
  ctx.kappa_j.resize(n_bss);
  ctx.gain_i.resize(n_bss);
  ctx.gain_j.resize(n_bss);

  auto fill = [&](int n, Eigen::VectorXd& kappa, Eigen::VectorXd& gain,
                  double& sensor_coef) {
    for (int t = 0; t < n_bss; ++t) {
      const double d2 = (st.dep.q.row(t) - st.dep.p.row(n)).squaredNorm();
      const double r = st.r(n, t);
      if (mode == Mode::Pool) {
        gain[t] = r * cfg.rb_bps / cfg.bandwidth_hz;
        kappa[t] = cfg.tradeoff * (std::numbers::ln2 / cfg.bandwidth_hz) *
                   cfg.rb_bps * r * st.coef.b(n, t) * d2;
      } else {
        gain[t] = r * cfg.rb_bps /
                  (cfg.bandwidth_hz * std::numbers::log2e);
        kappa[t] = cfg.tradeoff * st.coef.b(n, t) * d2 * gain[t];
      }
    }
    if (mode == Mode::Pool) {
      sensor_coef = st.coef.a[n] * pow2m1(cfg.rb_bps / cfg.bandwidth_hz);
    } else {
      sensor_coef =
          st.coef.a[n] /
          num::u_inverse(cfg.rb_bps /
                         (cfg.bandwidth_hz * std::numbers::log2e));
    }
  };
  fill(i, ctx.kappa_i, ctx.gain_i, ctx.sensor_i);
  fill(j, ctx.kappa_j, ctx.gain_j, ctx.sensor_j);
  return ctx;
}

double context_residual(const PairContext& ctx, double alpha,
                        const SolverState& st, Mode mode) {
  const SplitResult split = split_cells(ctx.cells, ctx.i, ctx.j, alpha,
                                        st.dep.p, st.coef.a, st.grid);
  const Vec2 pi = st.dep.p.row(ctx.i);
  const Vec2 pj = st.dep.p.row(ctx.j);
  const Vec2 h = alpha * pi + (1.0 - alpha) * pj;

  auto side = [&](double sensor_coef, const Vec2& pn, const Eigen::VectorXd& kappa,
                  const Eigen::VectorXd& gain, double v) {
    double acc = sensor_coef * (pn - h).squaredNorm();
    for (Eigen::Index t = 0; t < kappa.size(); ++t) {
      if (kappa[t] == 0) continue;
      const double x = gain[t] * v;
      if (mode == Mode::Pool) {
        acc += kappa[t] * std::exp2(x);
      } else {
        acc += kappa[t] * (x <= 0 ? 1.0 : num::d_inv_u_recip(x));
      }
    }
    return acc;
  };
  return side(ctx.sensor_i, pi, ctx.kappa_i, ctx.gain_i, split.v_i) -
         side(ctx.sensor_j, pj, ctx.kappa_j, ctx.gain_j, split.v_j);
}

// Current assignment of the union expressed as a SplitResult.
SplitResult current_split(const std::vector<int>& cells, int i,
                          const SolverState& st) {
  SplitResult out;
  out.cells = cells;
  out.to_i.resize(cells.size());
  for (size_t k = 0; k < cells.size(); ++k) {
    const int idx = cells[k];
    const bool to_i = st.part.owner[idx] == i;
    out.to_i[k] = to_i ? 1 : 0;
    const double m = st.grid.mass[idx];
    const Vec2 w = st.grid.center(idx);
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

}  // namespace

double boundary_objective(int i, int j, const SplitResult& split,
                          const SolverState& st, Mode mode) {
  const auto& cfg = st.cfg;
  const double outage_scale = -std::log1p(-cfg.outage_eps);
  const double log2e_b = cfg.bandwidth_hz * std::numbers::log2e;

  auto sensor_coef = [&](int n) {
    if (mode == Mode::Pool)
      return st.coef.a[n] * pow2m1(cfg.rb_bps / cfg.bandwidth_hz) / outage_scale;
    return st.coef.a[n] / num::u_inverse(cfg.rb_bps / log2e_b);
  };
  auto side = [&](int n, double v, const Vec2& m1, double m2) {
    const Vec2 pn = st.dep.p.row(n);
    // Second moment about the AP position directly from raw moments.
    const double moment = m2 - 2.0 * pn.dot(m1) + v * pn.squaredNorm();
    double acc = sensor_coef(n) * moment;
    for (int t = 0; t < cfg.n_bss; ++t) {
      const double flow = st.r(n, t) * cfg.rb_bps * v;
      const double d = (st.dep.q.row(t) - st.dep.p.row(n)).norm();
      const double ap =
          mode == Mode::Pool
              ? outage_link_power_ap(st.coef.b(n, t), d, flow, cfg.bandwidth_hz,
                                     cfg.outage_eps)
              : ergodic_link_power_ap(st.coef.b(n, t), d, flow, cfg.bandwidth_hz);
      acc += cfg.tradeoff * ap;
    }
    return acc;
  };
  return side(i, split.v_i, split.m1_i, split.m2_i) +
         side(j, split.v_j, split.m1_j, split.m2_j);
}

double pool_boundary_residual(int i, int j, double alpha, const SolverState& st) {
  // split_union validates adjacency before we build the cached context.
  (void)split_union(i, j, alpha, st.dep.p, st.coef.a, st.part, st.grid);
  const PairContext ctx =
      make_context(i, j, st, Mode::Pool, collect_union(st.part, st.grid, i, j));
  return context_residual(ctx, alpha, st, Mode::Pool);
}

double peel_boundary_residual(int i, int j, double alpha, const SolverState& st) {
  (void)split_union(i, j, alpha, st.dep.p, st.coef.a, st.part, st.grid);
  const PairContext ctx =
      make_context(i, j, st, Mode::Peel, collect_union(st.part, st.grid, i, j));
  return context_residual(ctx, alpha, st, Mode::Peel);
}

bool boundary_adjust_pair(int i, int j, SolverState& st, Mode mode,
                          const num::RootSolveSettings& settings) {
  const PairContext ctx =
      make_context(i, j, st, mode, collect_union(st.part, st.grid, i, j));
  auto residual = [&](double alpha) {
    return context_residual(ctx, alpha, st, mode);
  };

  double alpha_star;
  const double g0 = residual(0.0);
  const double g1 = residual(1.0);
  if (g0 == 0) {
    alpha_star = 0.0;
  } else if (g1 == 0) {
    alpha_star = 1.0;
  } else if ((g0 > 0) != (g1 > 0)) {
    alpha_star = num::bisect_root(residual, 0.0, 1.0, settings);
  } else {
    // No balance point on the segment: try full absorption either way.
    const SplitResult s0 =
        split_cells(ctx.cells, i, j, 0.0, st.dep.p, st.coef.a, st.grid);
    const SplitResult s1 =
        split_cells(ctx.cells, i, j, 1.0, st.dep.p, st.coef.a, st.grid);
    alpha_star = boundary_objective(i, j, s0, st, mode) <=
                         boundary_objective(i, j, s1, st, mode)
                     ? 0.0
                     : 1.0;
  }

  const SplitResult cand =
      split_cells(ctx.cells, i, j, alpha_star, st.dep.p, st.coef.a, st.grid);
  const SplitResult cur = current_split(ctx.cells, i, st);
  const double obj_new = boundary_objective(i, j, cand, st, mode);
  const double obj_cur = boundary_objective(i, j, cur, st, mode);
  if (!(obj_new <= obj_cur)) return false;

  bool changed = false;
  for (size_t k = 0; k < cand.cells.size(); ++k)
    if (cand.to_i[k] != cur.to_i[k]) {
      changed = true;
      break;
    }
  if (!changed) return false;
  apply_split(st.part, cand, i, j, st.dep.p);
  return true;
}

namespace {

Eigen::MatrixXd routed_flows(const SolverState& st, Mode mode) {
  const auto& cfg = st.cfg;
  Eigen::MatrixXd f(cfg.n_aps, cfg.n_bss);
  for (int n = 0; n < cfg.n_aps; ++n) {
    const Vec2 pn = st.dep.p.row(n);
    const Eigen::VectorXd row =
        mode == Mode::Pool
            ? waterfill_outage(pn, st.dep.q, st.coef.b.row(n),
                               st.part.stats.vols[n], cfg.rb_bps,
                               cfg.bandwidth_hz)
            : waterfill_ergodic(pn, st.dep.q, st.coef.b.row(n),
                                st.part.stats.vols[n], cfg.rb_bps,
                                cfg.bandwidth_hz);
    f.row(n) = row.transpose();
  }
  return f;
}

}  // namespace

Problem::Problem(ScenarioConfig c)
    : cfg(std::move(c)), coef(derive_coefficients(cfg)),
      grid(build_density_grid(cfg)) {}

SolverState Problem::make_state(Mode mode) const {
  const LloydInit lloyd = init_weighted_lloyd(cfg, coef, grid, cfg.seed);
  SolverState st{cfg, coef, grid,
                 Deployment{lloyd.p,
                            init_bs_lloyd(lloyd.p, cfg.n_bss,
                                          cfg.seed ^ 0x9e3779b97f4a7c15ull)},
                 lloyd.part, Eigen::MatrixXd::Zero(cfg.n_aps, cfg.n_bss)};
  st.r = normalized_flow(routed_flows(st, mode)).r;
  return st;
}

RunResult optimize(const ScenarioConfig& cfg, Mode mode) {
  const LinkCoefficients coef = derive_coefficients(cfg);
  const DensityGrid grid = build_density_grid(cfg);
  std::mt19937_64 rng(cfg.seed ^ 0x5bf03635f0a8a0c5ull);

  const LloydInit lloyd = init_weighted_lloyd(cfg, coef, grid, cfg.seed);
  SolverState st{cfg, coef, grid,
                 Deployment{lloyd.p, init_bs_lloyd(lloyd.p, cfg.n_bss,
                                                   cfg.seed ^ 0x9e3779b97f4a7c15ull)},
                 lloyd.part, Eigen::MatrixXd::Zero(cfg.n_aps, cfg.n_bss)};
  st.r = normalized_flow(routed_flows(st, mode)).r;

  RunResult out;
  auto& trace = out.trace;
  auto record = [&](int iter, const std::string& step) {
    const PowerBreakdown pb = state_power(st, mode);
    if (!trace.records.empty()) {
      const double prev = trace.records.back().d_total;
      if (pb.weighted_total > prev + 1e-9 * std::abs(prev)) {
        std::ostringstream os;
        os << "objective increased at iter " << iter << " step " << step << ": "
           << prev << " -> " << pb.weighted_total;
        trace.defects.push_back(os.str());
      }
    }
    trace.records.push_back({iter, pb.weighted_total, pb.sensor_power,
                             pb.ap_power, step});
    return pb.weighted_total;
  };

  double d_old = record(0, "init");
  std::vector<std::uint8_t> noted_disconnected(static_cast<size_t>(cfg.n_aps), 0);
  trace.status = OptimizationTrace::Status::MaxIters;
  const double move_tol = 1e-7 * cfg.region.diameter();
  int iter = 0;
  for (iter = 1; iter <= cfg.max_iters; ++iter) {
    // Step 1: positions for fixed partition and routing.  The update is an
    // exact block minimization, so iterating it to its joint fixed point
    // stays monotone and completes the step instead of crawling toward it
    // one application per outer iteration.
    const Eigen::MatrixXd flows = state_flows(st);
    for (int sub = 0; sub < 2000; ++sub) {
      const Deployment next =
          mode == Mode::Pool
              ? pool_position_update(st.part.stats, flows, st.dep, cfg, coef)
              : peel_position_update(st.part.stats, flows, st.dep, cfg, coef);
      const double move =
          std::max((next.p - st.dep.p).rowwise().norm().maxCoeff(),
                   (next.q - st.dep.q).rowwise().norm().maxCoeff());
      st.dep = next;
      if (move < move_tol) break;
    }
    record(iter, "positions");

    for (int sweep = 0; sweep < 1000; ++sweep) {
      auto pairs = neighbors(st.part, grid);
      std::shuffle(pairs.begin(), pairs.end(), rng);
      const double before = state_power(st, mode).weighted_total;
      for (const auto& [i, j] : pairs) boundary_adjust_pair(i, j, st, mode);
      const double after = state_power(st, mode).weighted_total;
      if (before - after < 1e-6 * std::max(std::abs(before), 1e-300)) break;
    }
    record(iter, "boundaries");

    const Eigen::MatrixXd f_new = routed_flows(st, mode);
    if (mode == Mode::Pool) {
      st.r = normalized_flow(f_new).r;
    } else {
      const double current = state_power(st, mode).weighted_total;
      const double candidate =
          d2_total(st.dep, st.part, f_new, cfg, coef).weighted_total;
      if (candidate < current) st.r = normalized_flow(f_new).r;
    }
    const double d_new = record(iter, "routing");

    for (int n : disconnected_regions(st.part, grid)) {
      if (noted_disconnected[static_cast<size_t>(n)]) continue;
      noted_disconnected[static_cast<size_t>(n)] = 1;
      std::ostringstream os;
      os << "region " << n << " became disconnected at iter " << iter;
      trace.notes.push_back(os.str());
    }

    if (d_old <= 0 || (d_old - d_new) / d_old < cfg.tau) {
      trace.status = OptimizationTrace::Status::Converged;
      break;
    }
    d_old = d_new;
  }

  out.iterations = std::min(iter, cfg.max_iters);
  out.dep = st.dep;
  out.part = st.part;
  out.flows = normalized_flow(state_flows(st));
  out.final_power = state_power(st, mode);
  return out;
}

RunResult pool_run(const ScenarioConfig& cfg) { return optimize(cfg, Mode::Pool); }
RunResult peel_run(const ScenarioConfig& cfg) { return optimize(cfg, Mode::Peel); }

}  // namespace wsn
