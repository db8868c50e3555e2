#include "scsa/solvers.hpp"

#include "scsa/penalties.hpp"
#include "scsa/prox.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace scsa {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

double rel_change(const Vector& cur, const Vector& prev) {
  const double pn = prev.norm();
  const double d = (cur - prev).norm();
  if (pn > 0.0) return d / pn;
  return d > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

double residual_sq(const Matrix& A, const Vector& b, const Vector& x) {
  return (A * x - b).squaredNorm();
}

Vector gradient(const Matrix& A, const Vector& b, const Vector& x) {
  return 2.0 * (A.transpose() * (A * x - b));
}

// Shared scaffolding for the plain iterative-thresholding solvers: gradient
// step, componentwise prox, relative-change stopping.
template <typename Prox, typename Objective>
SolverResult ist_loop(const Matrix& A, const Vector& b, double mu, double tol,
                      int max_iter, Prox&& prox, Objective&& objective) {
  const auto start = Clock::now();
  SolverResult res;
  res.segment_starts = {0};

  Vector x = Vector::Zero(A.cols());
  res.objective_trace.push_back(objective(x));
  for (int k = 0; k < max_iter; ++k) {
    Vector x_next = prox(x - mu * gradient(A, b, x));
    ++res.inner_iters_total;
    res.objective_trace.push_back(objective(x_next));
    const double d = rel_change(x_next, x);
    x = std::move(x_next);
    if (d <= tol) {
      res.converged = true;
      break;
    }
  }
  res.x_hat = std::move(x);
  res.outer_iters = res.inner_iters_total;
  res.wall_time_ms = elapsed_ms(start);
  return res;
}

} // namespace

ScsaConfig ScsaConfig::noise_free_lp(double c) {
  ScsaConfig cfg;
  cfg.variant = ScsaVariant::LP;
  cfg.c = c;
  cfg.eps1 = 1e-3;
  cfg.eps2 = 1e-2;
  return cfg;
}

ScsaConfig ScsaConfig::noisy_it(double lambda, double c) {
  ScsaConfig cfg;
  cfg.variant = ScsaVariant::IT;
  cfg.lambda = lambda;
  cfg.c = c;
  cfg.eps1 = std::min(1e-4, 1e-3 * lambda);
  cfg.eps2 = std::min(1e-4, 1e-3 * lambda);
  return cfg;
}

ScsaConfig ScsaConfig::noisy_fit(double lambda, double c) {
  ScsaConfig cfg;
  cfg.variant = ScsaVariant::FIT;
  cfg.lambda = lambda;
  cfg.c = c;
  cfg.eps1 = std::min(1e-4, 1e-3 * lambda);
  cfg.eps2 = std::min(1e-3, 1e-2 * lambda);
  return cfg;
}

double lasso_lambda(double sigma_w, Index m, double c_r, double alpha_r) {
  if (sigma_w <= 0.0 || c_r <= 0.0 || m <= 0)
    throw std::domain_error("lasso_lambda: inputs must be positive");
  if (!(alpha_r > 0.0 && alpha_r < 1.0))
    throw std::domain_error("lasso_lambda: alpha_r must lie in (0, 1)");
  return 2.0 * c_r * sigma_w *
         inv_norm_cdf(1.0 - alpha_r / (2.0 * static_cast<double>(m)));
}

double default_step_size(const Matrix& A) {
  return 0.99 / (2.0 * gram_spectral_norm(A));
}

SolverResult ist_lasso(const Matrix& A, const Vector& b,
                       const LassoParams& params, double tol, int max_iter) {
  const double alpha = params.lambda * params.mu;
  return ist_loop(
      A, b, params.mu, tol, max_iter,
      [&](const Vector& v) { return soft(v, alpha); },
      [&](const Vector& x) {
        return params.lambda * x.lpNorm<1>() + residual_sq(A, b, x);
      });
}

SolverResult fista_lasso(const Matrix& A, const Vector& b,
                         const LassoParams& params, double tol, int max_iter) {
  const auto start = Clock::now();
  SolverResult res;
  res.segment_starts = {0};
  const double alpha = params.lambda * params.mu;

  Vector x = Vector::Zero(A.cols());
  Vector y = x;
  double t = 1.0;
  res.objective_trace.push_back(params.lambda * x.lpNorm<1>() +
                                residual_sq(A, b, x));
  for (int k = 0; k < max_iter; ++k) {
    Vector x_next = soft(y - params.mu * gradient(A, b, y), alpha);
    const double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0;
    y = x_next + ((t - 1.0) / t_next) * (x_next - x);
    t = t_next;
    ++res.inner_iters_total;
    res.objective_trace.push_back(params.lambda * x_next.lpNorm<1>() +
                                  residual_sq(A, b, x_next));
    const double d = rel_change(x_next, x);
    x = std::move(x_next);
    if (d <= tol) {
      res.converged = true;
      break;
    }
  }
  res.x_hat = std::move(x);
  res.outer_iters = res.inner_iters_total;
  res.wall_time_ms = elapsed_ms(start);
  return res;
}

OptFitResult opt_fit(const Matrix& A, const Vector& b, double lambda_sigma,
                     double mu, double sigma, const Vector& x0, double tol,
                     int max_iter) {
  OptFitResult out;
  const ScsaProxParams prox_params{mu * lambda_sigma, sigma};

  Vector x = x0;
  Vector y = x0;
  double t = 1.0;
  for (int k = 0; k < max_iter; ++k) {
    Vector x_next = lambda_sigma > 0.0
                        ? scsa_threshold(y - mu * gradient(A, b, y),
                                         prox_params)
                        : Vector(y - mu * gradient(A, b, y));
    const double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0;
    y = x_next + ((t - 1.0) / t_next) * (x_next - x);
    t = t_next;
    ++out.iters;
    const double d = rel_change(x_next, x);
    x = std::move(x_next);
    if (d <= tol) {
      out.converged = true;
      break;
    }
  }
  out.x = std::move(x);
  return out;
}

SolverResult scsa_solve(const Matrix& A, const Vector& b, const ScsaConfig& cfg) {
  if (!(cfg.c > 0.0 && cfg.c < 0.5))
    throw std::domain_error("scsa: c must lie in (0, 0.5)");
  const auto start = Clock::now();
  SolverResult res;

  const bool lp = cfg.variant == ScsaVariant::LP;
  double lambda_max = 0.0;
  if (!lp) lambda_max = gram_spectral_norm(A);

  // Initialization: min-ell_1 solution (LP) or the LASSO solution (IT/FIT).
  Vector x;
  bool init_capped = false;
  if (lp) {
    try {
      x = solve_weighted_l1({A, b, Vector::Ones(A.cols())}, cfg.wl1_tol,
                            cfg.wl1_max_iter);
    } catch (const MaxIterError& err) {
      x = err.best_iterate;
      init_capped = true;
    }
  } else {
    const LassoParams init{cfg.lambda, 0.99 / (2.0 * lambda_max)};
    SolverResult fista = fista_lasso(A, b, init, cfg.eps1, cfg.max_inner);
    res.inner_iters_total += fista.inner_iters_total;
    x = std::move(fista.x_hat);
  }

  const double x0_max = x.lpNorm<Eigen::Infinity>();
  if (x0_max == 0.0) {
    res.x_hat = Vector::Zero(A.cols());
    res.converged = true;
    res.wall_time_ms = elapsed_ms(start);
    return res;
  }

  const double sigma0 = 8.0 * x0_max;
  const double sigma_floor = cfg.sigma_floor_factor * sigma0;
  double sigma = sigma0;
  bool capped = init_capped;

  for (int i = 0; i < cfg.max_outer; ++i) {
    const double lambda_sigma = cfg.lambda * sigma;
    const double mu =
        lp ? 0.0 : 0.99 / (2.0 * lambda_max + cfg.lambda / sigma);
    const ScsaProxParams prox_params{mu * lambda_sigma, sigma};
    res.final_sigma = sigma;

    res.segment_starts.push_back(res.objective_trace.size());
    const Vector x_outer_prev = x;

    Vector inner_prev = x;
    for (int j = 0; j < cfg.max_inner; ++j) {
      inner_prev = x;
      switch (cfg.variant) {
        case ScsaVariant::LP: {
          const Vector w = mm_weights(x.cwiseAbs(), sigma);
          try {
            x = solve_weighted_l1({A, b, w}, cfg.wl1_tol, cfg.wl1_max_iter);
          } catch (const MaxIterError& err) {
            x = err.best_iterate;
            capped = true;
          }
          ++res.inner_iters_total;
          res.objective_trace.push_back(big_f(x, sigma));
          break;
        }
        case ScsaVariant::IT: {
          x = scsa_threshold(x - mu * gradient(A, b, x), prox_params);
          ++res.inner_iters_total;
          res.objective_trace.push_back(lambda_sigma * big_f(x, sigma) +
                                        residual_sq(A, b, x));
          break;
        }
        case ScsaVariant::FIT: {
          OptFitResult fit = opt_fit(A, b, lambda_sigma, mu, sigma, x,
                                     cfg.eps2, cfg.max_inner);
          res.inner_iters_total += fit.iters;
          x = std::move(fit.x);
          res.objective_trace.push_back(lambda_sigma * big_f(x, sigma) +
                                        residual_sq(A, b, x));
          break;
        }
      }
      if (rel_change(x, inner_prev) <= cfg.eps2) break;
      if (j + 1 == cfg.max_inner) capped = true;
    }

    ++res.outer_iters;
    const double d1 = rel_change(x, x_outer_prev);
    if (d1 <= cfg.eps1) {
      res.converged = true;
      break;
    }
    sigma *= cfg.c;
    if (sigma < sigma_floor) {
      capped = true;
      break;
    }
    if (i + 1 == cfg.max_outer) capped = true;
  }

  if (capped) res.converged = false;
  res.x_hat = std::move(x);
  res.wall_time_ms = elapsed_ms(start);
  return res;
}

SolverResult ilt(const Matrix& A, const Vector& b, double lambda, double beta,
                 double mu, double tol, int max_iter) {
  if (beta <= 0.0) throw std::domain_error("ilt: beta must be > 0");
  const double mu_lambda = lambda * mu;
  return ist_loop(
      A, b, mu, tol, max_iter,
      [&](const Vector& v) {
        return mu_lambda > 0.0 ? log_prox(v, mu_lambda, beta) : v;
      },
      [&](const Vector& x) {
        return lambda * log_penalty(x, beta) + residual_sq(A, b, x);
      });
}

SolverResult ist_p(const Matrix& A, const Vector& b, double lambda, double p,
                   double mu, double tol, int max_iter) {
  const double alpha = lambda * mu;
  return ist_loop(
      A, b, mu, tol, max_iter,
      [&](const Vector& v) { return generalized_soft_p(v, alpha, p); },
      [&](const Vector& x) {
        // Traced for reference; the p-power "objective" is the LASSO one the
        // operator degenerates to at p = 1.
        return lambda * x.lpNorm<1>() + residual_sq(A, b, x);
      });
}

SolverResult reweighted_l1(const Matrix& A, const Vector& b, double epsilon,
                           int n_rounds, double wl1_tol, int wl1_max_iter) {
  if (epsilon <= 0.0)
    throw std::domain_error("reweighted_l1: epsilon must be > 0");
  if (n_rounds < 1)
    throw std::domain_error("reweighted_l1: need at least one round");
  const auto start = Clock::now();
  SolverResult res;
  res.segment_starts = {0};

  Vector w = Vector::Ones(A.cols());
  Vector x;
  for (int r = 0; r < n_rounds; ++r) {
    int iters = 0;
    x = solve_weighted_l1({A, b, w}, wl1_tol, wl1_max_iter, &iters);
    res.inner_iters_total += iters;
    ++res.outer_iters;
    res.objective_trace.push_back(x.lpNorm<1>());
    w = (x.cwiseAbs().array() + epsilon).inverse();
  }
  res.x_hat = std::move(x);
  res.converged = true;
  res.wall_time_ms = elapsed_ms(start);
  return res;
}

Vector oracle_estimator(const Matrix& A, const Vector& b,
                        const SupportSet& tau) {
  Vector x = Vector::Zero(A.cols());
  if (tau.empty()) return x;
  const Vector u = least_squares_on_support(A, b, tau);
  for (size_t k = 0; k < tau.size(); ++k) x(tau[k]) = u(static_cast<Index>(k));
  return x;
}

StationarityReport stationarity_check(const Vector& x_hat, const Matrix& A,
                                      const Vector& b, double lambda_sigma,
                                      double sigma, double zero_tol) {
  StationarityReport rep;
  for (Index i = 0; i < x_hat.size(); ++i)
    if (std::abs(x_hat(i)) > zero_tol) rep.support.push_back(i);

  const double threshold = lambda_sigma / (2.0 * sigma);
  const Index k = static_cast<Index>(rep.support.size());

  Vector residual;
  if (k == 0) {
    residual = -b;
    rep.r_on = 0.0;
  } else {
    Matrix At(A.rows(), k);
    Vector xt(k);
    for (Index j = 0; j < k; ++j) {
      At.col(j) = A.col(rep.support[static_cast<size_t>(j)]);
      xt(j) = x_hat(rep.support[static_cast<size_t>(j)]);
    }
    residual = At * xt - b;

    // On-support fixed-point identity: x_tau should equal the least-squares
    // solution minus the penalty-induced pullback.
    const Vector ls = least_squares_on_support(A, b, rep.support);
    Vector pull(k);
    for (Index j = 0; j < k; ++j)
      pull(j) = std::copysign(std::exp(-std::abs(xt(j)) / sigma), xt(j));
    Eigen::LDLT<Matrix> gram((At.transpose() * At).eval());
    const Vector expected = ls - threshold * gram.solve(pull);
    rep.r_on = (xt - expected).norm();
  }

  double worst = -std::numeric_limits<double>::infinity();
  size_t next_support = 0;
  for (Index i = 0; i < A.cols(); ++i) {
    if (next_support < rep.support.size() &&
        rep.support[next_support] == i) {
      ++next_support;
      continue;
    }
    worst = std::max(worst, std::abs(A.col(i).dot(residual)));
  }
  rep.r_off = (worst == -std::numeric_limits<double>::infinity())
                  ? -threshold
                  : worst - threshold;
  return rep;
}

} // namespace scsa
