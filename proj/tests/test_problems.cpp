#include "scsa/problems.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace scsa;

TEST_CASE("gen_problem construction invariants") {
  const Problem p = gen_problem(30, 60, 5, SignalDist::Gaussian, 1e-2, 123);
  for (Index j = 0; j < 60; ++j)
    CHECK(std::abs(p.A.col(j).norm() - 1.0) <= 1e-12);

  int nnz = 0;
  for (Index i = 0; i < 60; ++i)
    if (p.x_true(i) != 0.0) ++nnz;
  CHECK(nnz == 5);
  CHECK(std::abs(p.x_true.norm() - std::sqrt(5.0)) <= 1e-12);

  // Noise-free Gaussian signals are not renormalized.
  const Problem clean = gen_problem(30, 60, 5, SignalDist::Gaussian, 0.0, 123);
  CHECK(clean.b == clean.A * clean.x_true);

  CHECK_THROWS_AS(gen_problem(30, 60, 30, SignalDist::Gaussian, 0.0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(gen_problem(60, 60, 5, SignalDist::Gaussian, 0.0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(gen_problem(30, 60, 0, SignalDist::Gaussian, 0.0, 1),
                  std::invalid_argument);
}

TEST_CASE("rademacher amplitudes already have norm sqrt(s)") {
  const Problem p = gen_problem(40, 80, 9, SignalDist::Rademacher, 1e-2, 7);
  for (Index i = 0; i < 80; ++i)
    if (p.x_true(i) != 0.0) CHECK(std::abs(p.x_true(i)) == 1.0);
  CHECK(std::abs(p.x_true.norm() - 3.0) <= 1e-12);
}

TEST_CASE("gen_problem is deterministic in the seed") {
  const Problem a = gen_problem(25, 50, 4, SignalDist::Gaussian, 1e-3, 99);
  const Problem b = gen_problem(25, 50, 4, SignalDist::Gaussian, 1e-3, 99);
  CHECK(a.A == b.A);
  CHECK(a.b == b.b);
  CHECK(a.x_true == b.x_true);

  const Problem c = gen_problem(25, 50, 4, SignalDist::Gaussian, 1e-3, 100);
  CHECK(a.b != c.b);
}

TEST_CASE("column normalization is idempotent") {
  Problem p = gen_problem(20, 40, 3, SignalDist::Gaussian, 0.0, 5);
  Matrix renorm = p.A;
  for (Index j = 0; j < renorm.cols(); ++j)
    renorm.col(j) /= renorm.col(j).norm();
  CHECK((renorm - p.A).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("snr_rec") {
  Vector x(2);
  x << 3.0, 4.0; // norm 5
  CHECK(snr_rec(x, x) == 300.0);
  Vector half_off = x;
  half_off(0) -= 0.5; // error 0.5 = norm/10
  CHECK(snr_rec(x, half_off) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(snr_rec(x, Vector::Zero(2)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(snr_rec(Vector::Zero(2), x), std::invalid_argument);

  // Strictly decreasing in the error norm.
  double prev = snr_rec(x, x);
  for (double eps : {1e-8, 1e-4, 1e-2, 0.5, 2.0}) {
    Vector y = x;
    y(1) += eps;
    const double v = snr_rec(x, y);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("msnr_rec") {
  Vector x(1);
  x << 3.0; // ||x||^2 = 9
  std::vector<Vector> truths(3, x);
  std::vector<Vector> estimates;
  for (double err : {1.0, 2.0, 3.0}) { // squared errors 1, 4, 9
    Vector y(1);
    y << 3.0 - err;
    estimates.push_back(y);
  }
  CHECK(msnr_rec(truths, estimates) ==
        doctest::Approx(10.0 * std::log10(9.0 / 4.0)).epsilon(1e-12));

  // Exact trials report the cap.
  CHECK(msnr_rec({x}, {x}) == 300.0);

  // Even count: mean of the middle two.
  CHECK(msnr_from_sq_errors(9.0, {1.0, 2.0, 4.0, 8.0}) ==
        doctest::Approx(10.0 * std::log10(9.0 / 3.0)).epsilon(1e-12));

  CHECK_THROWS_AS(msnr_rec({}, {}), std::invalid_argument);
}

TEST_CASE("srr") {
  Vector x = Vector::Zero(6);
  x(1) = 2.0;
  x(4) = -1.0;

  CHECK(srr(x, x, 2));
  CHECK_FALSE(srr(x, Vector::Zero(6), 2));

  // Swapping a support entry for a bigger off-support one misses.
  Vector y = x;
  y(0) = 5.0;
  y(1) = 0.0;
  CHECK_FALSE(srr(x, y, 2));

  // Positive rescaling never changes the answer.
  CHECK(srr(x, 0.001 * x, 2));
  CHECK(srr(x, 1000.0 * x, 2));

  // Extra small off-support noise below the s-th magnitude is fine.
  Vector z = x;
  z(3) = 1e-6;
  CHECK(srr(x, z, 2));
}

TEST_CASE("success_rate and mse aggregates") {
  std::vector<MetricRecord> records(4);
  records[0].snr_db = 61.0;
  records[0].success = true;
  records[0].sq_error = 1.0;
  records[1].snr_db = 59.0;
  records[1].success = false;
  records[1].sq_error = 3.0;
  records[2].snr_db = 60.0;
  records[2].success = true;
  records[2].sq_error = 1.0;
  records[3].snr_db = 10.0;
  records[3].success = false;
  records[3].sq_error = 3.0;
  CHECK(success_rate(records) == 0.5);
  CHECK(mse(records) == 2.0);
  CHECK_THROWS_AS(success_rate({}), std::invalid_argument);
  CHECK_THROWS_AS(mse({}), std::invalid_argument);
}

TEST_CASE("problem directory round-trip") {
  namespace fs = std::filesystem;
  const Problem p = gen_problem(15, 30, 4, SignalDist::Rademacher, 1e-2, 42);
  const std::string dir =
      (fs::temp_directory_path() / "scsa_problem_rt").string();
  save_problem(dir, p);
  const Problem q = load_problem(dir);
  CHECK(q.A == p.A);
  CHECK(q.b == p.b);
  CHECK(q.x_true == p.x_true);
  CHECK(q.s == p.s);
  CHECK(q.sigma_w == p.sigma_w);
  CHECK(q.seed == p.seed);
  CHECK(q.dist == p.dist);
  fs::remove_all(dir);
}

TEST_CASE("rng stream basics") {
  Rng a(1), b(1);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(2);
  CHECK(a.next_u64() != c.next_u64());

  Rng d(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = d.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }

  // Crude two-sided bound on the normal sample mean/variance.
  Rng e(4);
  double sum = 0.0, sq = 0.0;
  const int N = 20000;
  for (int i = 0; i < N; ++i) {
    const double z = e.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / N) < 0.03);
  CHECK(std::abs(sq / N - 1.0) < 0.05);
}
