#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace wsn::num {

struct RootSolveSettings {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_bisections = 200;
};

namespace detail {

inline constexpr double kEulerGamma = 0.5772156649015328606;

// Convergent series around 0: E1(x) = -gamma - ln x + sum_k (-1)^{k+1} x^k / (k k!)
template <typename Scalar>
Scalar e1_series(Scalar x) {
  Scalar sum = 0;
  Scalar term = x;  // k = 1
  for (int k = 1; k < 80; ++k) {
    sum += term;
    if (std::abs(term) < std::abs(sum) * Scalar(1e-18)) break;
    term *= -x * Scalar(k) / (Scalar(k + 1) * Scalar(k + 1));
  }
  return -Scalar(kEulerGamma) - std::log(x) + sum;
}

// Modified Lentz evaluation of the continued fraction
//   1 / (x+1 - 1^2 / (x+3 - 2^2 / (x+5 - ...)))
// which equals e^x E1(x) directly, avoiding under/overflow of the factors.
template <typename Scalar>
Scalar e1_cf_scaled(Scalar x) {
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar tiny = std::numeric_limits<Scalar>::min() * Scalar(16);
  Scalar b = x + 1;
  Scalar c = 1 / tiny;
  Scalar d = 1 / b;
  Scalar h = d;
  for (int i = 1; i <= 400; ++i) {
    const Scalar a = -Scalar(i) * Scalar(i);
    b += 2;
    d = a * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1 / d;
    const Scalar del = c * d;
    h *= del;
    if (std::abs(del - 1) <= eps) break;
  }
  return h;
}

}  // namespace detail

// Exponential integral E1(x) = \int_1^inf e^{-x t} / t dt for x > 0.
// Series below 1, continued fraction above; absolute error well under
// 1e-12 across [1e-8, 700].
template <typename Scalar>
Scalar exp_integral_e1(Scalar x) {
  if (!(x > 0)) throw std::domain_error("exp_integral_e1: requires x > 0");
  if (x <= 1) return detail::e1_series(x);
  return detail::e1_cf_scaled(x) * std::exp(-x);
}

// U(x) = e^x E1(x).  Strictly decreasing, U: (0,inf) -> (0,inf), with
// 0.5 ln(1 + 2/x) < U(x) < ln(1 + 1/x).
template <typename Scalar>
Scalar u_of(Scalar x) {
  if (!(x > 0)) throw std::domain_error("u_of: requires x > 0");
  if (x <= 1) return std::exp(x) * detail::e1_series(x);
  return detail::e1_cf_scaled(x);
}

// Generic bisection for a sign-changing residual on [lo, hi].
// Returns x with |residual(x)| <= abs_tol or bracket width <= rel_tol*|x|.
// Same-sign endpoints (neither a root) raise std::invalid_argument.
double bisect_root(const std::function<double(double)>& residual, double lo,
                   double hi, const RootSolveSettings& settings = {});

// Inverse of U on (0, inf), bisected inside the certified bracket
//   2/(e^{2y}-1) <= U^{-1}(y) <= 1/(e^y-1)
// that follows from the sandwich e^y - 1 < 1/U^{-1}(y) < (e^{2y}-1)/2.
double u_inverse(double y, const RootSolveSettings& settings = {});

// d/dy (1/U^{-1}(y)) = 1 / ( U^{-1}(y) * [1 - y U^{-1}(y)] ), strictly
// positive because x e^x E1(x) < 1.
double d_inv_u_recip(double y);

}  // namespace wsn::num
