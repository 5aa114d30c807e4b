#include "wsn/scenario.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace wsn {

namespace {

void require_positive(const Eigen::VectorXd& v, const std::string& name,
                      std::vector<std::string>& errors) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0)) {
      std::ostringstream os;
      os << name << "[" << i << "] must be strictly positive, got " << v[i];
      errors.push_back(os.str());
    }
  }
}

}  // namespace

ValidationResult validate_config(const ScenarioConfig& cfg) {
  ValidationResult res;
  auto err = [&res](const std::string& m) { res.errors.push_back(m); };

  if (cfg.region.empty())
    err("region needs at least 3 vertices (or a rectangle)");
  else if (!cfg.region.is_convex())
    err("region polygon is not convex");
  else if (!(cfg.region.area() > 0))
    err("region has zero area");

  if (cfg.grid < 2) err("grid must be >= 2 cells per axis");
  if (cfg.n_aps < 1) err("n_aps must be >= 1");
  if (cfg.n_bss < 1) err("n_bss must be >= 1");

  if (!(cfg.rb_bps > 0)) err("rb_bps must be strictly positive");
  if (!(cfg.bandwidth_hz > 0)) err("bandwidth_hz must be strictly positive");
  if (!(cfg.noise_density_w_per_hz > 0))
    err("noise_density_w_per_hz must be strictly positive");
  if (!(cfg.carrier_wavelength_m > 0))
    err("carrier_wavelength_m must be strictly positive");
  if (!(cfg.sensor_tx_gain > 0)) err("sensor_tx_gain must be strictly positive");
  if (!(cfg.sensor_loss > 0)) err("sensor_loss must be strictly positive");

  if (cfg.ap_tx_gain.size() != cfg.n_aps)
    err("ap_tx_gain must have n_aps entries");
  if (cfg.ap_rx_gain.size() != cfg.n_aps)
    err("ap_rx_gain must have n_aps entries");
  if (cfg.ap_loss.size() != cfg.n_aps) err("ap_loss must have n_aps entries");
  if (cfg.bs_rx_gain.size() != cfg.n_bss)
    err("bs_rx_gain must have n_bss entries");
  require_positive(cfg.ap_tx_gain, "ap_tx_gain", res.errors);
  require_positive(cfg.ap_rx_gain, "ap_rx_gain", res.errors);
  require_positive(cfg.ap_loss, "ap_loss", res.errors);
  require_positive(cfg.bs_rx_gain, "bs_rx_gain", res.errors);

  if (!(cfg.tradeoff >= 0)) err("tradeoff must be >= 0");
  if (!(cfg.outage_eps > 0 && cfg.outage_eps < 1))
    err("outage_eps out of range (0,1)");
  if (!(cfg.tau > 0)) err("tau must be strictly positive");
  if (cfg.max_iters < 1) err("max_iters must be >= 1");

  switch (cfg.density.kind) {
    case DensitySpec::Kind::Uniform:
      if (!(cfg.density.uniform_total > 0))
        err("density: uniform total sensor count must be > 0");
      break;
    case DensitySpec::Kind::Samples: {
      const auto& s = cfg.density.samples;
      if (s.rows() != cfg.grid || s.cols() != cfg.grid)
        err("density: samples must be a grid x grid array");
      bool negative = false;
      for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) < 0) negative = true;
      if (negative) err("density must be nonnegative everywhere");
      if (!(s.sum() > 0)) err("density: total integral must be > 0");
      break;
    }
  }

  if (cfg.rb_bps > 0 && cfg.bandwidth_hz > 0 &&
      cfg.rb_bps / cfg.bandwidth_hz > 20)
    res.warnings.push_back(
        "rb_bps/bandwidth_hz > 20: outage powers grow as 2^(R_b/B) and will "
        "be extremely large");

  return res;
}

LinkCoefficients derive_coefficients(const ScenarioConfig& cfg) {
  auto positive = [](double x) { return x > 0 && std::isfinite(x); };
  if (!positive(cfg.sensor_tx_gain) || !positive(cfg.sensor_loss) ||
      !positive(cfg.noise_density_w_per_hz) || !positive(cfg.bandwidth_hz) ||
      !positive(cfg.carrier_wavelength_m))
    throw std::invalid_argument(
        "derive_coefficients: nonpositive radio parameter");
  for (Eigen::Index n = 0; n < cfg.ap_tx_gain.size(); ++n)
    if (!positive(cfg.ap_tx_gain[n]) || !positive(cfg.ap_rx_gain[n]) ||
        !positive(cfg.ap_loss[n]))
      throw std::invalid_argument("derive_coefficients: nonpositive AP gain/loss");
  for (Eigen::Index m = 0; m < cfg.bs_rx_gain.size(); ++m)
    if (!positive(cfg.bs_rx_gain[m]))
      throw std::invalid_argument("derive_coefficients: nonpositive BS gain");

  const int n_aps = static_cast<int>(cfg.ap_tx_gain.size());
  const int n_bss = static_cast<int>(cfg.bs_rx_gain.size());
  const double four_pi_sq = std::pow(4.0 * std::numbers::pi, 2);
  const double lc2 = cfg.carrier_wavelength_m * cfg.carrier_wavelength_m;
  const double sigma_b = cfg.noise_density_w_per_hz * cfg.bandwidth_hz;

  LinkCoefficients coef;
  coef.a.resize(n_aps);
  coef.b.resize(n_aps, n_bss);
  for (int n = 0; n < n_aps; ++n) {
    coef.a[n] = sigma_b * four_pi_sq * cfg.sensor_loss /
                (cfg.sensor_tx_gain * cfg.ap_rx_gain[n] * lc2);
    for (int m = 0; m < n_bss; ++m)
      coef.b(n, m) = sigma_b * four_pi_sq * cfg.ap_loss[n] /
                     (cfg.ap_tx_gain[n] * cfg.bs_rx_gain[m] * lc2);
  }
  return coef;
}

FlowMatrix normalized_flow(Eigen::MatrixXd f) {
  for (Eigen::Index i = 0; i < f.size(); ++i)
    if (f(i) < 0)
      throw std::invalid_argument("normalized_flow: negative flow entry");

  FlowMatrix out;
  out.r = Eigen::MatrixXd::Zero(f.rows(), f.cols());
  out.degenerate_row.assign(static_cast<size_t>(f.rows()), 0);
  for (Eigen::Index n = 0; n < f.rows(); ++n) {
    const double row_sum = f.row(n).sum();
    if (row_sum > 0) {
      out.r.row(n) = f.row(n) / row_sum;
    } else {
      out.degenerate_row[static_cast<size_t>(n)] = 1;
    }
  }
  out.f = std::move(f);
  return out;
}

Eigen::MatrixXd flows_from(const Eigen::MatrixXd& r, const Eigen::VectorXd& vols,
                           double rb_bps) {
  Eigen::MatrixXd f(r.rows(), r.cols());
  for (Eigen::Index n = 0; n < r.rows(); ++n)
    f.row(n) = r.row(n) * (rb_bps * vols[n]);
  return f;
}

}  // namespace wsn
