#include "scsa/lambert_w.hpp"

#include <cmath>
#include <limits>

namespace scsa {

namespace {

constexpr double kBranchTol = 1e-15;
constexpr int kMaxHalley = 50;

// Halley iteration on f(w) = w e^w - x. Quadratic-plus convergence from any
// reasonable starting point; stops on relative change < 1e-15.
double halley(double w, double x) {
  for (int i = 0; i < kMaxHalley; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    const double w_next = w - step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w_next))) return w_next;
    w = w_next;
  }
  return w;
}

// Series around the branch point in p = sqrt(2(e*x + 1)); +p gives W0, -p
// gives Wm1 (Corless et al. 1996, eq. 4.22).
double branch_series(double p) {
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
}

// 2(e*x + 1) can round slightly negative at the branch point itself.
double branch_p(double x) {
  return std::sqrt(std::max(0.0, 2.0 * (std::exp(1.0) * x + 1.0)));
}

// Below this the series is already past double precision and Halley's
// denominators degenerate (w + 1 ~ p).
constexpr double kSeriesOnly = 1e-3;

} // namespace

double lambert_w0(double x) {
  if (x < kLambertBranchPoint) {
    if (x < kLambertBranchPoint - kBranchTol)
      throw std::domain_error("lambert_w0: argument below -1/e");
    return -1.0;
  }
  if (x == 0.0) return 0.0;

  double w;
  if (x < -0.25) {
    const double p = branch_p(x);
    if (p < kSeriesOnly) return branch_series(p);
    w = branch_series(p);
  } else if (x < 0.25) {
    // Truncated Maclaurin series, adequate seed for Halley.
    w = x * (1.0 + x * (-1.0 + x * (1.5 - 8.0 / 3.0 * x)));
  } else if (x < 3.0) {
    w = std::log(1.0 + x);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  w = halley(w, x);
  return w < -1.0 ? -1.0 : w;
}

double lambert_wm1(double x) {
  if (x >= 0.0)
    throw std::domain_error("lambert_wm1: argument must be negative");
  if (x < kLambertBranchPoint) {
    if (x < kLambertBranchPoint - kBranchTol)
      throw std::domain_error("lambert_wm1: argument below -1/e");
    return -1.0;
  }

  double w;
  if (x < -0.27) {
    const double p = branch_p(x);
    if (p < kSeriesOnly) return branch_series(-p);
    w = branch_series(-p);
  } else {
    // Asymptotic form near 0^-: W ~ log(-x) - log(-log(-x)).
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  w = halley(w, x);
  return w > -1.0 ? -1.0 : w;
}

} // namespace scsa
