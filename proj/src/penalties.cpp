#include "scsa/penalties.hpp"

#include <cmath>
#include <limits>

namespace scsa {

double ExponentialPenalty::value(double x, double sigma) const {
  return f_sigma(x, sigma);
}

double ExponentialPenalty::slope(double x, double sigma) const {
  if (x < 0.0) throw std::domain_error("DaPenalty::slope: x must be >= 0");
  if (sigma <= 0.0) throw std::domain_error("DaPenalty::slope: sigma <= 0");
  return std::exp(-x / sigma) / sigma;
}

double f_sigma(double x, double sigma) {
  if (x < 0.0) throw std::domain_error("f_sigma: x must be >= 0");
  if (sigma <= 0.0) throw std::domain_error("f_sigma: sigma must be > 0");
  // expm1 keeps full precision for x << sigma.
  return -std::expm1(-x / sigma);
}

double big_f(const Vector& x, double sigma) {
  if (sigma <= 0.0) throw std::domain_error("big_f: sigma must be > 0");
  double sum = 0.0;
  for (Index i = 0; i < x.size(); ++i) sum += -std::expm1(-std::abs(x(i)) / sigma);
  return sum;
}

Vector mm_weights(const Vector& x_abs, double sigma) {
  if (sigma <= 0.0) throw std::domain_error("mm_weights: sigma must be > 0");
  Vector w(x_abs.size());
  for (Index i = 0; i < w.size(); ++i) {
    if (x_abs(i) < 0.0)
      throw std::domain_error("mm_weights: x_abs must be >= 0");
    w(i) = std::max(std::exp(-x_abs(i) / sigma) / sigma,
                    std::numeric_limits<double>::min());
  }
  return w;
}

double log_penalty(const Vector& x, double beta) {
  if (beta <= 0.0) throw std::domain_error("log_penalty: beta must be > 0");
  double sum = 0.0;
  for (Index i = 0; i < x.size(); ++i) sum += std::log(std::abs(x(i)) + beta);
  return sum;
}

} // namespace scsa
