#pragma once

#include "scsa/linalg.hpp"

namespace scsa {

// Scalar sparsity penalty: a concave f with f(0) = 0 and f(x) -> 1 as
// x -> inf, applied at scale sigma as f(x / sigma). Exposes the value and
// slope so majorize-minimize loops can build tangent weights.
class DaPenalty {
 public:
  virtual ~DaPenalty() = default;
  virtual double value(double x, double sigma) const = 0;
  virtual double slope(double x, double sigma) const = 0;
  // f'(0); needed exactly for the ell_1 limit of sigma * F_sigma.
  virtual double gamma() const = 0;
};

// f(x) = 1 - exp(-x); the family every solver here uses.
class ExponentialPenalty final : public DaPenalty {
 public:
  double value(double x, double sigma) const override;
  double slope(double x, double sigma) const override;
  double gamma() const override { return 1.0; }
};

struct PenaltyParams {
  double lambda_sigma = 0.0; // >= 0
  double gamma = 1.0;        // f'(0) > 0
};

// 1 - exp(-x / sigma) for x >= 0 (throws on negative x; pass |x|).
double f_sigma(double x, double sigma);

// F_sigma(|x|) = sum_i f_sigma(|x_i|).
double big_f(const Vector& x, double sigma);

// Componentwise gradient of F_sigma at a nonnegative point:
// w_i = exp(-x_i / sigma) / sigma, clamped away from zero so weighted-ell_1
// subproblems keep strictly positive weights.
Vector mm_weights(const Vector& x_abs, double sigma);

// sum_i log(|x_i| + beta); the objective piece traced by the ILT solver.
double log_penalty(const Vector& x, double beta);

} // namespace scsa
