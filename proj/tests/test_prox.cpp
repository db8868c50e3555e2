#include "scsa/prox.hpp"

#include "scsa/problems.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace scsa;

namespace {

// Brute-force scalar minimizer: dense grid on [0, |x0| + 1], then
// golden-section refinement of the best cell. Independent of the closed
// forms under test.
double grid_min(const std::function<double(double)>& f, double hi,
                int points = 100000) {
  double best_x = 0.0, best_v = f(0.0);
  const double step = hi / (points - 1);
  for (int i = 1; i < points; ++i) {
    const double x = i * step;
    const double v = f(x);
    if (v < best_v) {
      best_v = v;
      best_x = x;
    }
  }
  double lo = std::max(0.0, best_x - step), up = std::min(hi, best_x + step);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = up - gr * (up - lo), d = lo + gr * (up - lo);
  for (int i = 0; i < 120; ++i) {
    if (f(c) < f(d)) {
      up = d;
    } else {
      lo = c;
    }
    c = up - gr * (up - lo);
    d = lo + gr * (up - lo);
  }
  const double x_ref = 0.5 * (lo + up);
  return f(x_ref) < best_v ? f(x_ref) : best_v;
}

double scsa_objective(double x, double a, const ScsaProxParams& p) {
  return 0.5 * (x - a) * (x - a) -
         p.mu_lambda * std::expm1(-std::abs(x) / p.sigma);
}

double log_objective(double x, double a, double mu_lambda, double beta) {
  return 0.5 * (x - a) * (x - a) + mu_lambda * std::log(std::abs(x) + beta);
}

} // namespace

TEST_CASE("soft thresholding") {
  CHECK(soft(2.0, 1.0) == 1.0);
  CHECK(soft(0.5, 1.0) == 0.0);
  CHECK(soft(-3.0, 0.0) == -3.0);
  CHECK(soft(-2.0, 1.0) == -1.0);
  CHECK_THROWS_AS(soft(1.0, -0.1), std::domain_error);
}

TEST_CASE("hard thresholding") {
  CHECK(hard(0.5, 0.1) == 0.5);
  CHECK(hard(0.4, 0.1) == 0.0);
  CHECK(hard(0.0, 0.3) == 0.0);
  CHECK(hard(-0.5, 0.1) == -0.5); // sign preserved
}

TEST_CASE("scsa_threshold pinned cases") {
  CHECK(scsa_threshold(0.0, {1.0, 1.0}) == 0.0);

  // Large |x0| passes through nearly untouched.
  const double big = scsa_threshold(50.0, {1.0, 1.0});
  CHECK(big == doctest::Approx(50.0).epsilon(1e-10));
}

TEST_CASE("scsa_threshold near soft for large sigma") {
  const ScsaProxParams p{100.0, 100.0}; // lambda = 1, mu = 1
  double worst = 0.0;
  for (int i = 0; i <= 1600; ++i) {
    const double x0 = -4.0 + 8.0 * i / 1600.0;
    worst = std::max(worst, std::abs(scsa_threshold(x0, p) - soft(x0, 1.0)));
  }
  CHECK(worst <= 0.05);
}

TEST_CASE("scsa_threshold near hard for small sigma") {
  const ScsaProxParams p{0.1, 0.1}; // lambda = 1, mu = 1
  const double jump = std::sqrt(0.2);
  double worst = 0.0;
  for (int i = 0; i <= 1600; ++i) {
    const double x0 = -4.0 + 8.0 * i / 1600.0;
    if (std::abs(std::abs(x0) - jump) <= 0.05) continue;
    worst = std::max(worst, std::abs(scsa_threshold(x0, p) - hard(x0, 0.1)));
  }
  CHECK(worst <= 0.01);
}

TEST_CASE("scsa_threshold matches brute-force oracle") {
  Rng rng(21);
  for (int t = 0; t < 1000; ++t) {
    const double x0 = (rng.uniform01() - 0.5) * 8.0;
    const ScsaProxParams p{std::exp(3.0 * (rng.uniform01() - 0.5)),
                           std::exp(3.0 * (rng.uniform01() - 0.5))};
    const double out = scsa_threshold(x0, p);
    const double a = std::abs(x0);
    const double value = scsa_objective(std::abs(out), a, p);
    const double oracle =
        grid_min([&](double x) { return scsa_objective(x, a, p); }, a + 1.0);
    CHECK(value <= oracle + 1e-8);
  }
}

TEST_CASE("scsa_threshold zero region is an interval with hard limit") {
  Rng rng(22);
  for (int t = 0; t < 20; ++t) {
    const ScsaProxParams p{std::exp(2.0 * (rng.uniform01() - 0.5)),
                           std::exp(2.0 * (rng.uniform01() - 0.5))};
    // Scan upward: once the output turns nonzero it must stay nonzero.
    bool seen_nonzero = false;
    double t_star = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const double x0 = 4.0 * i / 4000.0 * (1.0 + p.mu_lambda);
      const bool nonzero = scsa_threshold(x0, p) != 0.0;
      if (seen_nonzero) CHECK(nonzero);
      if (!seen_nonzero && nonzero) {
        seen_nonzero = true;
        t_star = x0;
      }
    }
    CHECK(seen_nonzero);
    (void)t_star;
  }

  // As sigma -> 0 the dead zone approaches the hard threshold sqrt(2 mu
  // lambda).
  for (double mu_lambda : {0.05, 0.5, 2.0}) {
    const ScsaProxParams p{mu_lambda, 1e-3 * std::sqrt(mu_lambda)};
    const double target = std::sqrt(2.0 * mu_lambda);
    double lo = 0.0, hi = 4.0 * target;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (scsa_threshold(mid, p) == 0.0 ? lo : hi) = mid;
    }
    CHECK(std::abs(0.5 * (lo + hi) - target) / target <= 0.05);
  }
}

TEST_CASE("generalized_soft_p") {
  CHECK(generalized_soft_p(4.0, 0.1, 0.5) ==
        doctest::Approx(3.95).epsilon(1e-15));
  CHECK(generalized_soft_p(2.0, 1.0, 1.0) == soft(2.0, 1.0));
  CHECK(generalized_soft_p(0.01, 0.1, 0.5) == 0.0);
  CHECK(generalized_soft_p(0.0, 0.1, 0.5) == 0.0);
  CHECK_THROWS_AS(generalized_soft_p(1.0, 0.1, 0.0), std::domain_error);
  CHECK_THROWS_AS(generalized_soft_p(1.0, 0.1, 1.5), std::domain_error);
}

TEST_CASE("log_prox pinned and asymptotic") {
  CHECK(log_prox(0.0, 0.01, 0.01) == 0.0);
  for (double x0 : {10.0, -25.0, 100.0})
    CHECK(std::abs(log_prox(x0, 0.01, 0.01) - x0) <= 0.01);
}

TEST_CASE("log_prox matches brute-force oracle") {
  Rng rng(23);
  for (int t = 0; t < 1000; ++t) {
    const double x0 = (rng.uniform01() - 0.5) * 6.0;
    const double mu_lambda = std::exp(3.0 * (rng.uniform01() - 0.5));
    const double beta = std::exp(2.0 * (rng.uniform01() - 0.5)) * 0.1;
    const double out = log_prox(x0, mu_lambda, beta);
    const double a = std::abs(x0);
    const double value = log_objective(std::abs(out), a, mu_lambda, beta);
    const double oracle = grid_min(
        [&](double x) { return log_objective(x, a, mu_lambda, beta); },
        a + 1.0);
    CHECK(value <= oracle + 1e-8);
  }
}

TEST_CASE("odd symmetry and shrinkage of every operator") {
  Rng rng(24);
  for (int t = 0; t < 400; ++t) {
    const double x0 = (rng.uniform01() - 0.5) * 10.0;
    const double alpha = rng.uniform01() * 2.0;
    const ScsaProxParams p{0.1 + rng.uniform01(), 0.1 + rng.uniform01()};
    const double beta = 0.05 + rng.uniform01();
    const double pw = 0.1 + 0.9 * rng.uniform01();

    CHECK(soft(-x0, alpha) == -soft(x0, alpha));
    CHECK(hard(-x0, 0.3) == -hard(x0, 0.3));
    CHECK(scsa_threshold(-x0, p) == -scsa_threshold(x0, p));
    CHECK(generalized_soft_p(-x0, alpha, pw) ==
          -generalized_soft_p(x0, alpha, pw));
    CHECK(log_prox(-x0, p.mu_lambda, beta) == -log_prox(x0, p.mu_lambda, beta));

    CHECK(std::abs(soft(x0, alpha)) <= std::abs(x0));
    CHECK(std::abs(scsa_threshold(x0, p)) <= std::abs(x0));
    CHECK(std::abs(generalized_soft_p(x0, alpha, pw)) <= std::abs(x0));
    CHECK(std::abs(log_prox(x0, p.mu_lambda, beta)) <= std::abs(x0));
  }
}

TEST_CASE("vector application is elementwise") {
  Vector x(4);
  x << -2.0, 0.0, 0.3, 5.0;
  const ScsaProxParams p{0.7, 0.9};
  const Vector mapped = scsa_threshold(x, p);
  for (Index i = 0; i < x.size(); ++i)
    CHECK(mapped(i) == scsa_threshold(x(i), p));

  const Vector soft_mapped = soft(x, 0.4);
  for (Index i = 0; i < x.size(); ++i) CHECK(soft_mapped(i) == soft(x(i), 0.4));
}
