// Acceptance suite: executable checks for the artifact's core claims, one
// printed line per criterion.  Exit code 0 iff every criterion passes.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "wsn/io.hpp"
#include "wsn/oracle.hpp"
#include "wsn/optimizer.hpp"
#include "wsn/routing.hpp"
#include "wsn/special_functions.hpp"

using namespace wsn;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

// ---- criterion 1: U-function sandwich and roundtrip ------------------------

void criterion_1_numerics() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  int sandwich_bad = 0;
  double worst_roundtrip = 0;
  const int samples = 10000;
  for (int k = 0; k < samples; ++k) {
    const double y = log_uniform(rng, 1e-4, 50.0);
    const double x = num::u_inverse(y);
    const double recip = 1.0 / x;
    if (!(std::expm1(y) < recip && recip < 0.5 * std::expm1(2.0 * y)))
      ++sandwich_bad;
    worst_roundtrip = std::max(worst_roundtrip, std::abs(num::u_of(x) - y) / y);
  }
  const double elapsed = seconds_since(t0);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "U sandwich strict on %d samples (%d violations), roundtrip "
                "max rel err %.2e <= 1e-9, runtime %.2fs < 5s",
                samples, sandwich_bad, worst_roundtrip, elapsed);
  report(1, sandwich_bad == 0 && worst_roundtrip <= 1e-9 && elapsed < 5.0, buf);
}

// ---- criterion 2: routing optimality against the simplex oracle ------------

void criterion_2_routing() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(77);
  const double bandwidth = 5e5;
  double worst_gap = 0;
  int kkt_failures = 0;
  for (int inst = 0; inst < 100; ++inst) {
    Eigen::VectorXd kappa(3);
    for (int m = 0; m < 3; ++m) kappa[m] = log_uniform(rng, 1e-12, 1e-7);
    std::uniform_real_distribution<double> ub(0.05, 6.0);
    const double budget = bandwidth * ub(rng);

    Eigen::MatrixX2d q(3, 2);
    for (int m = 0; m < 3; ++m) q.row(m) << std::cos(2.0 * m), std::sin(2.0 * m);
    const Vec2 p = Vec2::Zero();
    Eigen::VectorXd b_row(3);
    for (int m = 0; m < 3; ++m)
      b_row[m] = kappa[m] / (q.row(m).transpose() - p).squaredNorm();

    for (const Mode mode : {Mode::Pool, Mode::Peel}) {
      const Eigen::VectorXd flow =
          mode == Mode::Pool
              ? waterfill_outage(p, q, b_row, 1.0, budget, bandwidth)
              : waterfill_ergodic(p, q, b_row, 1.0, budget, bandwidth);
      const Eigen::VectorXd ref =
          oracle::routing_oracle(kappa, budget, bandwidth, mode, 0.005);
      const double ours = oracle::routing_objective(kappa, flow, bandwidth, mode);
      const double best = oracle::routing_objective(kappa, ref, bandwidth, mode);
      worst_gap = std::max(worst_gap, std::abs(ours - best) / best);

      const double eta = 1e-6 * budget;
      for (int from = 0; from < 3; ++from)
        for (int to = 0; to < 3; ++to) {
          if (from == to || flow[from] < eta) continue;
          Eigen::VectorXd shifted = flow;
          shifted[from] -= eta;
          shifted[to] += eta;
          if (oracle::routing_objective(kappa, shifted, bandwidth, mode) <
              ours * (1.0 - 1e-12))
            ++kkt_failures;
        }
    }
  }
  const double elapsed = seconds_since(t0);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "100 instances x 2 modes vs simplex grid (step 0.005): max rel "
                "gap %.2e <= 1e-3, %d exchange-KKT failures, runtime %.1fs < "
                "120s",
                worst_gap, kkt_failures, elapsed);
  report(2, worst_gap <= 1e-3 && kkt_failures == 0 && elapsed < 120.0, buf);
}

// ---- criterion 3: Monte-Carlo outage calibration ---------------------------

void criterion_3_outage() {
  const double eps = 0.01;
  const double bandwidth = 5e5;
  const double flow = bandwidth;  // F/B = 1
  const double gamma = std::expm1(std::numbers::ln2) / (-std::log1p(-eps));
  const double rate =
      oracle::outage_mc_validator(gamma, flow, bandwidth, 1000000, 2718);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "empirical outage at threshold SNR = %.5f in [0.008, 0.012] "
                "(1e6 draws, eps = 0.01)",
                rate);
  report(3, rate >= 0.008 && rate <= 0.012, buf);
}

// ---- criterion 4: fixed-point gradients and boundary roots -----------------

double fd_gradient(const Problem& prob, const Partition& part,
                   const Eigen::MatrixXd& flows, const Deployment& dep,
                   Mode mode, bool ap_side, int node, int axis) {
  auto eval = [&](double delta) {
    Deployment d = dep;
    if (ap_side)
      d.p(node, axis) += delta;
    else
      d.q(node, axis) += delta;
    return (mode == Mode::Pool ? d1_total(d, part, flows, prob.cfg, prob.coef)
                               : d2_total(d, part, flows, prob.cfg, prob.coef))
        .weighted_total;
  };
  const double h = 1.0;  // meters; objectives are quadratic in positions
  return (eval(h) - eval(-h)) / (2 * h);
}

double max_abs_gradient(const Problem& prob, const Partition& part,
                        const Eigen::MatrixXd& flows, const Deployment& dep,
                        Mode mode, bool ap_side) {
  const int count = ap_side ? prob.cfg.n_aps : prob.cfg.n_bss;
  double worst = 0;
  for (int k = 0; k < count; ++k)
    for (int axis = 0; axis < 2; ++axis)
      worst = std::max(
          worst,
          std::abs(fd_gradient(prob, part, flows, dep, mode, ap_side, k, axis)));
  return worst;
}

void criterion_4_fixed_points() {
  double worst_grad_rel = 0;
  int boundary_failures = 0;
  int boundary_checked = 0;
  const int scan_samples = 100;

  for (int s = 0; s < 20; ++s) {
    const Problem prob(oracle::random_small_scenario(1000ull + static_cast<unsigned>(s), 40));
    for (const Mode mode : {Mode::Pool, Mode::Peel}) {
      SolverState st = prob.make_state(mode);
      const Eigen::MatrixXd flows = state_flows(st);

      // Gradient scale before the update; the update point's gradient must
      // be at least 1e5 times smaller.
      const double scale =
          std::max(max_abs_gradient(prob, st.part, flows, st.dep, mode, true),
                   max_abs_gradient(prob, st.part, flows, st.dep, mode, false));
      const Deployment updated =
          mode == Mode::Pool
              ? pool_position_update(st.part.stats, flows, st.dep, prob.cfg,
                                     prob.coef)
              : peel_position_update(st.part.stats, flows, st.dep, prob.cfg,
                                     prob.coef);
      const Deployment p_only{updated.p, st.dep.q};
      const double grad_p =
          max_abs_gradient(prob, st.part, flows, p_only, mode, true);
      const double grad_q =
          max_abs_gradient(prob, st.part, flows, updated, mode, false);
      worst_grad_rel = std::max(worst_grad_rel, std::max(grad_p, grad_q) / scale);

      // Boundary roots against the direct objective scan (plateaus from the
      // cell quantization count as agreement when the objectives match).
      const auto pairs = neighbors(st.part, prob.grid);
      int tested = 0;
      for (const auto& pair : pairs) {
        const int i = pair.first, j = pair.second;
        if (++tested > 3) break;
        auto resid = [&](double a) {
          return mode == Mode::Pool ? pool_boundary_residual(i, j, a, st)
                                    : peel_boundary_residual(i, j, a, st);
        };
        const double g0 = resid(0.0), g1 = resid(1.0);
        double root;
        if (g0 == 0)
          root = 0;
        else if (g1 == 0)
          root = 1;
        else if ((g0 > 0) != (g1 > 0))
          root = num::bisect_root(resid, 0.0, 1.0);
        else
          root = g0 > 0 ? 1.0 : 0.0;
        const oracle::BoundaryScan scan =
            oracle::boundary_oracle_scan(i, j, st, mode, scan_samples);
        const auto cells = collect_union(st.part, prob.grid, i, j);
        const SplitResult at_root =
            split_cells(cells, i, j, root, st.dep.p, st.coef.a, prob.grid);
        const double obj_root = boundary_objective(i, j, at_root, st, mode);
        ++boundary_checked;
        const bool close = std::abs(root - scan.alpha) * scan_samples <= 2.0;
        const bool same_plateau =
            oracle::relative_gap(obj_root, scan.objective) <= 1e-9;
        if (!close && !same_plateau) ++boundary_failures;
      }
    }
  }
  char buf[300];
  std::snprintf(buf, sizeof buf,
                "20 scenarios x 2 modes: max FD gradient at update points "
                "%.2e of pre-update scale (< 1e-5); boundary roots vs scan: "
                "%d/%d outside 2 grid steps",
                worst_grad_rel, boundary_failures, boundary_checked);
  report(4, worst_grad_rel < 1e-5 && boundary_failures == 0, buf);
}

// ---- criterion 5: monotone convergence of full runs ------------------------

void criterion_5_monotone() {
  int defect_runs = 0;
  int max_iter_runs = 0;
  double worst_violation = 0;
  for (int s = 0; s < 20; ++s) {
    const ScenarioConfig cfg = oracle::random_small_scenario(1000ull + static_cast<unsigned>(s), 40);
    for (const Mode mode : {Mode::Pool, Mode::Peel}) {
      const RunResult run = optimize(cfg, mode);
      if (!run.trace.defects.empty()) ++defect_runs;
      if (run.trace.status != OptimizationTrace::Status::Converged)
        ++max_iter_runs;
      for (size_t k = 1; k < run.trace.records.size(); ++k) {
        const double prev = run.trace.records[k - 1].d_total;
        const double cur = run.trace.records[k].d_total;
        if (prev > 0)
          worst_violation = std::max(worst_violation, (cur - prev) / prev);
      }
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "40 full runs: worst relative objective increase %.2e <= 1e-9, "
                "%d defect reports, %d runs hit max_iters",
                worst_violation, defect_runs, max_iter_runs);
  report(5, worst_violation <= 1e-9 && defect_runs == 0 && max_iter_runs == 0,
         buf);
}

// ---- criterion 6: benchmark scenario reproduction --------------------------

void criterion_6_benchmark(const ScenarioConfig& benchmark) {
  double best_pool = std::numeric_limits<double>::infinity();
  double best_peel = best_pool;
  double worst_seed_time = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ScenarioConfig cfg = benchmark;
    cfg.seed = seed;
    auto t0 = std::chrono::steady_clock::now();
    best_pool = std::min(best_pool,
                         optimize(cfg, Mode::Pool).final_power.weighted_total);
    worst_seed_time = std::max(worst_seed_time, seconds_since(t0));
    t0 = std::chrono::steady_clock::now();
    best_peel = std::min(best_peel,
                         optimize(cfg, Mode::Peel).final_power.weighted_total);
    worst_seed_time = std::max(worst_seed_time, seconds_since(t0));
  }
  char buf[300];
  std::snprintf(buf, sizeof buf,
                "best of 5 seeds: D1 = %.4f W (<= 0.9, beats 1.27), D2 = %.4f "
                "mW (<= 12, beats 17.94), slowest seed %.1fs <= 600s",
                best_pool, best_peel * 1e3, worst_seed_time);
  report(6,
         best_pool <= 0.9 && best_pool < 1.27 && best_peel <= 12e-3 &&
             best_peel < 17.94e-3 && worst_seed_time <= 600.0,
         buf);
}

// ---- criterion 7: lambda trade-off trend ------------------------------------

void criterion_7_tradeoff(const ScenarioConfig& benchmark) {
  const std::vector<double> lambdas{0.0, 0.25, 0.5, 1.0};
  bool pass = true;
  std::string detail;
  for (const Mode mode : {Mode::Pool, Mode::Peel}) {
    std::vector<double> ap, sensor;
    for (const double lam : lambdas) {
      ScenarioConfig cfg = benchmark;
      cfg.tradeoff = lam;
      cfg.seed = 1;  // initialization is lambda-independent, so it is shared
      const RunResult run = optimize(cfg, mode);
      ap.push_back(run.final_power.ap_power);
      sensor.push_back(run.final_power.sensor_power);
    }
    int ap_inversions = 0, sensor_inversions = 0;
    for (size_t k = 1; k < lambdas.size(); ++k) {
      if (ap[k] > ap[k - 1] * (1 + 1e-9)) ++ap_inversions;
      if (sensor[k] < sensor[k - 1] * (1 - 1e-9)) ++sensor_inversions;
    }
    pass = pass && ap_inversions <= 1 && sensor_inversions <= 1;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%s ap W {%.3g %.3g %.3g %.3g} inv=%d, sensor W {%.3g %.3g "
                  "%.3g %.3g} inv=%d; ",
                  mode == Mode::Pool ? "pool" : "peel", ap[0], ap[1], ap[2],
                  ap[3], ap_inversions, sensor[0], sensor[1], sensor[2],
                  sensor[3], sensor_inversions);
    detail += buf;
  }
  report(7, pass, "lambda sweep {0, 0.25, 0.5, 1}: " + detail);
}

// ---- criterion 8: coefficient anchor ----------------------------------------

void criterion_8_coefficient(const ScenarioConfig& benchmark) {
  const LinkCoefficients coef = derive_coefficients(benchmark);
  const double b62 = coef.b(5, 1);  // AP 6 / BS 2, 1-indexed
  char buf[160];
  std::snprintf(buf, sizeof buf, "b[6][2] = %.4e W/m^2 in [2.18e-11, 2.20e-11]",
                b62);
  report(8, b62 >= 2.18e-11 && b62 <= 2.20e-11, buf);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string scenario_path =
      argc > 1 ? argv[1] : "scenarios/benchmark_15ap_3bs.json";
  ScenarioConfig benchmark;
  try {
    benchmark = io::load_scenario(scenario_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cannot load benchmark scenario: %s\n", e.what());
    return 2;
  }

  criterion_1_numerics();
  criterion_2_routing();
  criterion_3_outage();
  criterion_4_fixed_points();
  criterion_5_monotone();
  criterion_6_benchmark(benchmark);
  criterion_7_tradeoff(benchmark);
  criterion_8_coefficient(benchmark);

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
