#pragma once

#include "scsa/linalg.hpp"
#include "scsa/weighted_l1.hpp"

#include <vector>

namespace scsa {

enum class ScsaVariant { LP, IT, FIT };

struct ScsaConfig {
  ScsaVariant variant = ScsaVariant::FIT;
  double lambda = 0.0; // regularization; ignored by the LP variant
  double c = 0.1;      // sigma decay factor, in (0, 0.5)
  double eps1 = 1e-3;  // outer-loop relative-change threshold
  double eps2 = 1e-2;  // inner-loop relative-change threshold
  int max_outer = 100;
  int max_inner = 5000;
  double sigma_floor_factor = 1e-12; // floor = factor * sigma0
  double wl1_tol = 1e-8;             // LP subproblem tolerance
  int wl1_max_iter = 20000;

  // Stock configurations with the stopping thresholds each variant wants.
  static ScsaConfig noise_free_lp(double c = 0.1);
  static ScsaConfig noisy_it(double lambda, double c = 0.1);
  static ScsaConfig noisy_fit(double lambda, double c = 0.1);
};

struct SolverResult {
  Vector x_hat;
  int outer_iters = 0;
  int inner_iters_total = 0;
  // One value per inner iteration. For IT/FIT runs these are
  // lambda_sigma * F_sigma(|x|) + ||Ax - b||^2; for the LP variant,
  // F_sigma(|x|); for plain IST/FISTA/ILT/IST-p, the solver's own objective.
  std::vector<double> objective_trace;
  // Index into objective_trace where each sigma segment begins (the traced
  // objective changes meaning when sigma does).
  std::vector<std::size_t> segment_starts;
  // Last sigma a continuation run actually optimized at; 0 for one-stage
  // solvers and for degenerate zero solutions.
  double final_sigma = 0.0;
  double wall_time_ms = 0.0;
  bool converged = false;
};

struct LassoParams {
  double lambda = 0.0; // > 0
  double mu = 0.0;     // step size; <= 0.99 / (2 lambda_max(A^T A))
};

struct StationarityReport {
  double r_on = 0.0;  // norm of the on-support fixed-point defect
  double r_off = 0.0; // max off-support correlation minus the threshold
  SupportSet support;
};

// LASSO regularization from the noise level:
// 2 c_r sigma_w Phi^{-1}(1 - alpha_r / (2m)).
double lasso_lambda(double sigma_w, Index m, double c_r, double alpha_r);

// 0.99 / (2 lambda_max(A^T A)): the step size used by IST/FISTA/ILT/IST-p.
double default_step_size(const Matrix& A);

// min lambda ||x||_1 + ||Ax - b||^2 by iterative soft thresholding; stops
// when the relative iterate change drops below tol.
SolverResult ist_lasso(const Matrix& A, const Vector& b,
                       const LassoParams& params, double tol, int max_iter);

// Same problem with Nesterov-accelerated steps (Beck & Teboulle 2009).
SolverResult fista_lasso(const Matrix& A, const Vector& b,
                         const LassoParams& params, double tol, int max_iter);

struct OptFitResult {
  Vector x;
  int iters = 0;
  bool converged = false;
};

// Accelerated inner solve of min lambda_sigma F_sigma(|x|) + ||Ax - b||^2 at
// a fixed sigma: FISTA-style momentum around the scsa_threshold operator.
OptFitResult opt_fit(const Matrix& A, const Vector& b, double lambda_sigma,
                     double mu, double sigma, const Vector& x0, double tol,
                     int max_iter);

// The full continuation solver: initialize from min-ell_1 (LP) or FISTA
// (IT/FIT), then shrink sigma geometrically, warm-starting each stage.
SolverResult scsa_solve(const Matrix& A, const Vector& b, const ScsaConfig& cfg);

// Iterative log thresholding: min lambda sum log(|x_i| + beta) + ||Ax - b||^2.
SolverResult ilt(const Matrix& A, const Vector& b, double lambda, double beta,
                 double mu, double tol, int max_iter);

// IST with the generalized p-power soft operator (identical to IST at p = 1).
SolverResult ist_p(const Matrix& A, const Vector& b, double lambda, double p,
                   double mu, double tol, int max_iter);

// Rounds of min ||Wx||_1 s.t. Ax = b with w_i = 1 / (|x_i| + epsilon),
// starting from unit weights (Candes/Wakin/Boyd scheme).
SolverResult reweighted_l1(const Matrix& A, const Vector& b, double epsilon,
                           int n_rounds, double wl1_tol = 1e-8,
                           int wl1_max_iter = 20000);

// Least squares restricted to a known support, zero elsewhere.
Vector oracle_estimator(const Matrix& A, const Vector& b,
                        const SupportSet& tau);

// Measures how far x_hat is from a stationary point of the sigma-smoothed
// objective: the on-support fixed-point defect and the worst off-support
// correlation overshoot. Both <= 0 (up to tolerance) at stationarity.
StationarityReport stationarity_check(const Vector& x_hat, const Matrix& A,
                                      const Vector& b, double lambda_sigma,
                                      double sigma, double zero_tol);

} // namespace scsa
