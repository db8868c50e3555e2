#pragma once

#include "scsa/linalg.hpp"

namespace scsa {

// Scalar thresholding operators. All are odd in x0 and shrink magnitude;
// vector application is componentwise.

// max(|x0| - alpha, 0) * sign(x0).
double soft(double x0, double alpha);

// x0 when |x0| > sqrt(2 * lambda), else 0. Keeps the sign of the input.
double hard(double x0, double lambda);

struct ScsaProxParams {
  double mu_lambda = 0.0; // mu * lambda_sigma > 0
  double sigma = 0.0;     // > 0
};

// Global minimizer of (1/(2 mu)) (x - x0)^2 + lambda_sigma (1 - e^(-|x|/sigma));
// closed form through the W0 branch of Lambert W. Interpolates between soft
// thresholding (large sigma) and hard thresholding (small sigma).
double scsa_threshold(double x0, const ScsaProxParams& p);

// max(|x0| - alpha |x0|^(p-1), 0) * sign(x0) for 0 < p <= 1; equals soft at
// p = 1. Zero input maps to zero (the dead zone closes the singularity).
double generalized_soft_p(double x0, double alpha, double p);

// Global minimizer of (1/(2 mu)) (x - x0)^2 + lambda log(|x| + beta) via the
// stationarity quadratic; candidates are 0 and its admissible roots.
double log_prox(double x0, double mu_lambda, double beta);

// Componentwise application helpers used by the solvers.
Vector soft(const Vector& x, double alpha);
Vector scsa_threshold(const Vector& x, const ScsaProxParams& p);
Vector generalized_soft_p(const Vector& x, double alpha, double p);
Vector log_prox(const Vector& x, double mu_lambda, double beta);

} // namespace scsa
