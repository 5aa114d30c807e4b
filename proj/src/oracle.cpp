#include "wsn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "wsn/routing.hpp"

namespace wsn::oracle {

double relative_gap(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b),
                                 std::numeric_limits<double>::epsilon()});
  return std::abs(a - b) / scale;
}

OracleReport make_report(const std::string& quantity, double oracle_value,
                         double artifact_value, double tolerance) {
  OracleReport r;
  r.quantity = quantity;
  r.oracle_value = oracle_value;
  r.artifact_value = artifact_value;
  r.relative_gap = relative_gap(oracle_value, artifact_value);
  r.tolerance = tolerance;
  r.pass = r.relative_gap <= tolerance;
  return r;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 52);
}

}  // namespace

double exp_integral_e1_quadrature(double x) {
  if (!(x > 0))
    throw std::domain_error("exp_integral_e1_quadrature: requires x > 0");
  // E1(x) = int_x^{x+710} e^{-u}/u du + tail; the tail is below e^{-710}.
  auto f = [](double u) { return std::exp(-u) / u; };
  const double coarse = std::exp(-x) / (x + 1.0);  // lower bound on E1
  return integrate(f, x, x + 710.0, 1e-15 * coarse);
}

double routing_objective(const Eigen::VectorXd& kappa,
                         const Eigen::VectorXd& flows_bps, double bandwidth_hz,
                         Mode mode) {
  double acc = 0;
  for (Eigen::Index m = 0; m < kappa.size(); ++m) {
    if (mode == Mode::Pool) {
      acc += kappa[m] *
             std::expm1(flows_bps[m] / bandwidth_hz * std::numbers::ln2);
    } else {
      acc += kappa[m] * 0.5 *
             std::expm1(2.0 * flows_bps[m] /
                        (bandwidth_hz * std::numbers::log2e));
    }
  }
  return acc;
}

Eigen::VectorXd routing_oracle(const Eigen::VectorXd& kappa, double budget_bps,
                               double bandwidth_hz, Mode mode, double step) {
  const int m_count = static_cast<int>(kappa.size());
  if (m_count > 4)
    throw std::invalid_argument("routing_oracle: refuses more than 4 links");
  if (m_count < 1) throw std::invalid_argument("routing_oracle: empty instance");
  if (!(step > 0 && step <= 1))
    throw std::invalid_argument("routing_oracle: step must be in (0,1]");

  const int k_steps = static_cast<int>(std::lround(1.0 / step));
  const double delta = budget_bps / k_steps;

  Eigen::VectorXd best = Eigen::VectorXd::Zero(m_count);
  best[0] = budget_bps;
  double best_obj = routing_objective(kappa, best, bandwidth_hz, mode);
  Eigen::VectorXd cand = Eigen::VectorXd::Zero(m_count);

  // Enumerate compositions of k_steps into m_count parts.
  std::function<void(int, int)> rec = [&](int link, int remaining) {
    if (link == m_count - 1) {
      cand[link] = remaining * delta;
      const double obj = routing_objective(kappa, cand, bandwidth_hz, mode);
      if (obj < best_obj) {
        best_obj = obj;
        best = cand;
      }
      return;
    }
    for (int take = 0; take <= remaining; ++take) {
      cand[link] = take * delta;
      rec(link + 1, remaining - take);
    }
  };
  rec(0, k_steps);
  return best;
}

double outage_mc_validator(double gamma, double flow_bps, double bandwidth_hz,
                           std::int64_t trials, std::uint64_t seed) {
  if (trials < 10000)
    throw std::invalid_argument("outage_mc_validator: trials must be >= 1e4");
  std::mt19937_64 rng(seed);
  std::int64_t outages = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const double u =
        static_cast<double>(rng() >> 11) * 0x1.0p-53;  // uniform [0,1)
    const double h2 = -std::log1p(-u);                 // Exp(1)
    const double rate = bandwidth_hz * std::log2(1.0 + h2 * gamma);
    if (rate < flow_bps) ++outages;
  }
  return static_cast<double>(outages) / static_cast<double>(trials);
}

BoundaryScan boundary_oracle_scan(int i, int j, const SolverState& st, Mode mode,
                                  int n_samples) {
  if (n_samples < 100)
    throw std::invalid_argument("boundary_oracle_scan: n_samples must be >= 100");
  const auto cells = collect_union(st.part, st.grid, i, j);
  if (cells.empty())
    throw std::invalid_argument("boundary_oracle_scan: empty union");

  std::vector<double> objective(static_cast<size_t>(n_samples) + 1);
  int argmin = 0;
  for (int k = 0; k <= n_samples; ++k) {
    const double alpha = static_cast<double>(k) / n_samples;
    const SplitResult split =
        split_cells(cells, i, j, alpha, st.dep.p, st.coef.a, st.grid);
    objective[static_cast<size_t>(k)] = boundary_objective(i, j, split, st, mode);
    if (objective[static_cast<size_t>(k)] < objective[static_cast<size_t>(argmin)])
      argmin = k;
  }

  // The objective is piecewise constant in alpha (cells flip at discrete
  // thresholds); resolve the minimizing plateau to its center.
  const double min_obj = objective[static_cast<size_t>(argmin)];
  const double tol = 1e-12 * std::max(std::abs(min_obj), 1e-300);
  int lo = argmin, hi = argmin;
  while (lo > 0 && objective[static_cast<size_t>(lo) - 1] <= min_obj + tol) --lo;
  while (hi < n_samples && objective[static_cast<size_t>(hi) + 1] <= min_obj + tol)
    ++hi;
  BoundaryScan out;
  out.alpha = 0.5 * (lo + hi) / n_samples;
  out.objective = min_obj;
  return out;
}

}  // namespace wsn::oracle
