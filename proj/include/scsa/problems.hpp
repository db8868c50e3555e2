#pragma once

#include "scsa/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace scsa {

// Counter-based deterministic generator (splitmix64, Steele et al. 2014),
// fixed here as stream version 1: the same seed yields the same variates on
// every platform and release. Gaussian draws use Box-Muller on exactly two
// 53-bit uniforms, so consumption is deterministic too (no rejection).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double uniform01();           // [0, 1)
  double normal();              // N(0, 1), consumes two draws
  std::uint64_t below(std::uint64_t n); // uniform in [0, n)

 private:
  std::uint64_t state_;
};

enum class SignalDist { Gaussian, Rademacher };

std::string to_string(SignalDist d);
SignalDist signal_dist_from_string(const std::string& s);

struct Problem {
  Matrix A;      // n x m, unit-norm columns
  Vector b;      // length n
  Vector x_true; // length m, s-sparse
  double sigma_w = 0.0;
  Index s = 0;
  SignalDist dist = SignalDist::Gaussian;
  std::uint64_t seed = 0;
};

// Gaussian sensing matrix with normalized columns, uniform random support,
// Gaussian or Rademacher amplitudes; in the noisy case the signal is scaled
// to ||x|| = sqrt(s) and white Gaussian noise of std sigma_w is added.
Problem gen_problem(Index n, Index m, Index s, SignalDist dist, double sigma_w,
                    std::uint64_t seed);

// Reconstruction SNR in dB, capped at +300 for exact recovery.
double snr_rec(const Vector& x_true, const Vector& x_hat);
inline constexpr double kSnrCapDb = 300.0;

// Median-based reconstruction SNR across trials (all trials share the
// ||x_true|| convention; the first list entry supplies it).
double msnr_rec(const std::vector<Vector>& x_true_list,
                const std::vector<Vector>& x_hat_list);
double msnr_from_sq_errors(double signal_sq_norm,
                           std::vector<double> sq_errors);

// Exact support recovery: do the s largest-magnitude entries of x_hat (ties
// to the lower index) sit exactly on the true support? All-zero x_hat counts
// as a miss.
bool srr(const Vector& x_true, const Vector& x_hat, Index s);

inline constexpr double kSuccessSnrDb = 60.0;

struct MetricRecord {
  std::string experiment;
  std::string algorithm;
  Index n = 0, m = 0, s = 0;
  double sigma_w = 0.0;
  double c = 0.0; // continuation factor when applicable, else 0
  int trial = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";
  double snr_db = 0.0;
  bool success = false;
  bool support_exact = false;
  double sq_error = 0.0;
  int iters = 0;
  double wall_time_ms = 0.0;
};

double success_rate(const std::vector<MetricRecord>& records);
double mse(const std::vector<MetricRecord>& records);

// Directory layout: A.csv, b.csv, x_true.csv plus meta.json.
void save_problem(const std::string& dir, const Problem& p);
Problem load_problem(const std::string& dir);

} // namespace scsa
