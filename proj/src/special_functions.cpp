#include "wsn/special_functions.hpp"

#include <algorithm>
#include <string>

namespace wsn::num {

double bisect_root(const std::function<double(double)>& residual, double lo,
                   double hi, const RootSolveSettings& settings) {
  if (lo > hi) std::swap(lo, hi);
  double f_lo = residual(lo);
  double f_hi = residual(hi);
  if (f_lo == 0) return lo;
  if (f_hi == 0) return hi;
  if ((f_lo > 0) == (f_hi > 0)) {
    throw std::invalid_argument("bisect_root: no bracket, residual(" +
                                std::to_string(lo) + ")=" + std::to_string(f_lo) +
                                " and residual(" + std::to_string(hi) +
                                ")=" + std::to_string(f_hi) +
                                " share a sign");
  }
  double mid = 0.5 * (lo + hi);
  for (int k = 0; k < settings.max_bisections; ++k) {
    mid = 0.5 * (lo + hi);
    const double f_mid = residual(mid);
    if (std::abs(f_mid) <= settings.abs_tol) return mid;
    if ((f_mid > 0) == (f_lo > 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= settings.rel_tol * std::max(std::abs(mid), 1e-300)) break;
  }
  return 0.5 * (lo + hi);
}

double u_inverse(double y, const RootSolveSettings& settings) {
  if (!(y > 0)) throw std::domain_error("u_inverse: requires y > 0");
  if (y > 350)
    throw std::domain_error("u_inverse: y too large, bracket underflows");

  double lo = 2.0 / std::expm1(2.0 * y);
  double hi = 1.0 / std::expm1(y);
  if (!(lo < hi)) return 0.5 * (lo + hi);  // bracket collapsed (tiny y)

  // Lemma bounds are strict; widen a hair if rounding lands outside.
  double g_lo = u_of(lo) - y;
  double g_hi = u_of(hi) - y;
  for (int guard = 0; guard < 8 && g_lo < 0; ++guard) {
    lo *= 0.5;
    g_lo = u_of(lo) - y;
  }
  for (int guard = 0; guard < 8 && g_hi > 0; ++guard) {
    hi *= 2.0;
    g_hi = u_of(hi) - y;
  }
  if (g_lo == 0) return lo;
  if (g_hi == 0) return hi;
  if (g_lo < 0 || g_hi > 0)
    throw std::runtime_error("u_inverse: failed to certify bracket [" +
                             std::to_string(lo) + ", " + std::to_string(hi) +
                             "]");

  // Residual exit is scale-aware so the roundtrip error stays small in
  // relative terms even for tiny y (where U' is steep and |U - y| <= abs_tol
  // alone would be a loose stop).
  const double resid_tol = settings.abs_tol * std::min(1.0, y);
  double mid = 0.5 * (lo + hi);
  for (int k = 0; k < settings.max_bisections; ++k) {
    mid = 0.5 * (lo + hi);
    const double g_mid = u_of(mid) - y;
    if (std::abs(g_mid) <= resid_tol) return mid;
    if (g_mid > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= settings.rel_tol * mid) return 0.5 * (lo + hi);
  }
  throw std::runtime_error("u_inverse: no convergence within " +
                           std::to_string(settings.max_bisections) +
                           " bisections, final bracket [" + std::to_string(lo) +
                           ", " + std::to_string(hi) + "]");
}

double d_inv_u_recip(double y) {
  if (!(y > 0)) throw std::domain_error("d_inv_u_recip: requires y > 0");
  // 1/U^{-1}(y) = y + O(y^2), so the derivative is 1 to double precision.
  if (y < 1e-12) return 1.0;
  // Force width-collapse termination: near y -> 0 the factor 1 - y*U^{-1}(y)
  // suffers cancellation, so the root must be located to full relative
  // precision rather than stopping on |U(x) - y|.
  RootSolveSettings s;
  s.abs_tol = 0.0;
  s.rel_tol = 1e-14;
  s.max_bisections = 300;
  const double x = u_inverse(y, s);
  const double denom = x * (1.0 - y * x);
  if (!(denom > 0))
    throw std::runtime_error("d_inv_u_recip: nonpositive denominator");
  return 1.0 / denom;
}

}  // namespace wsn::num
