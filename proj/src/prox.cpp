#include "scsa/prox.hpp"

#include "scsa/lambert_w.hpp"

#include <cmath>

namespace scsa {

double soft(double x0, double alpha) {
  if (alpha < 0.0) throw std::domain_error("soft: alpha must be >= 0");
  const double m = std::abs(x0) - alpha;
  return m > 0.0 ? std::copysign(m, x0) : 0.0;
}

double hard(double x0, double lambda) {
  if (lambda <= 0.0) throw std::domain_error("hard: lambda must be > 0");
  return std::abs(x0) > std::sqrt(2.0 * lambda) ? x0 : 0.0;
}

double scsa_threshold(double x0, const ScsaProxParams& p) {
  if (p.mu_lambda <= 0.0 || p.sigma <= 0.0)
    throw std::domain_error("scsa_threshold: parameters must be positive");
  if (x0 == 0.0) return 0.0;

  const double a = std::abs(x0);
  const double s = p.sigma;
  const double z = -(p.mu_lambda / (s * s)) * std::exp(-a / s);

  // No interior stationary point: the penalty slope beats the quadratic
  // everywhere on x >= 0 and the minimum sits at the origin.
  if (z < kLambertBranchPoint - 1e-15) return 0.0;

  const double x1 = s * lambert_w0(z) + a;
  if (x1 <= 0.0) return 0.0;

  // Compare mu-scaled objectives: 0.5 (x - a)^2 + mu_lambda (1 - e^(-x/s)).
  const double at_x1 =
      0.5 * (x1 - a) * (x1 - a) - p.mu_lambda * std::expm1(-x1 / s);
  const double at_zero = 0.5 * a * a;
  // Ties go to zero: prefer the sparse answer.
  return at_x1 < at_zero ? std::copysign(x1, x0) : 0.0;
}

double generalized_soft_p(double x0, double alpha, double p) {
  if (alpha < 0.0) throw std::domain_error("generalized_soft_p: alpha < 0");
  if (!(p > 0.0 && p <= 1.0))
    throw std::domain_error("generalized_soft_p: p must lie in (0, 1]");
  if (x0 == 0.0) return 0.0;
  const double a = std::abs(x0);
  const double m = a - alpha * std::pow(a, p - 1.0);
  return m > 0.0 ? std::copysign(m, x0) : 0.0;
}

double log_prox(double x0, double mu_lambda, double beta) {
  if (mu_lambda <= 0.0 || beta <= 0.0)
    throw std::domain_error("log_prox: parameters must be positive");
  if (x0 == 0.0) return 0.0;

  const double a = std::abs(x0);
  // Stationarity of 0.5 (x - a)^2 + mu_lambda log(x + beta) on x > 0:
  // x^2 + (beta - a) x + (mu_lambda - beta a) = 0.
  const double qb = beta - a;
  const double qc = mu_lambda - beta * a;
  const double disc = qb * qb - 4.0 * qc;

  auto objective = [&](double x) {
    return 0.5 * (x - a) * (x - a) + mu_lambda * std::log(x + beta);
  };

  double best_x = 0.0;
  double best_val = objective(0.0);
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    for (double root : {(-qb + sq) / 2.0, (-qb - sq) / 2.0}) {
      if (root > 0.0 && objective(root) < best_val) {
        best_val = objective(root);
        best_x = root;
      }
    }
  }
  return std::copysign(best_x, x0);
}

namespace {

template <typename F>
Vector map(const Vector& x, F&& f) {
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) out(i) = f(x(i));
  return out;
}

} // namespace

Vector soft(const Vector& x, double alpha) {
  return map(x, [&](double v) { return soft(v, alpha); });
}

Vector scsa_threshold(const Vector& x, const ScsaProxParams& p) {
  return map(x, [&](double v) { return scsa_threshold(v, p); });
}

Vector generalized_soft_p(const Vector& x, double alpha, double p) {
  return map(x, [&](double v) { return generalized_soft_p(v, alpha, p); });
}

Vector log_prox(const Vector& x, double mu_lambda, double beta) {
  return map(x, [&](double v) { return log_prox(v, mu_lambda, beta); });
}

} // namespace scsa
