#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace scsa {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Strictly increasing column indices; the active set of a sparse iterate.
using SupportSet = std::vector<Index>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when power iteration fails to reach the requested tolerance; carries
// the best available estimate so callers can decide whether to proceed.
class PowerIterationError : public std::runtime_error {
 public:
  PowerIterationError(const std::string& what, double estimate)
      : std::runtime_error(what), best_estimate(estimate) {}
  double best_estimate;
};

class RankDeficientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Vector matvec(const Matrix& A, const Vector& x);

// Largest eigenvalue of A^T A by power iteration. Deterministic: always
// starts from the normalized all-ones vector, so downstream step sizes are
// reproducible run to run.
double gram_spectral_norm(const Matrix& A, double tol = 1e-10,
                          int max_iter = 10000);

// Minimizer u of ||A_tau u - b|| over the columns selected by tau, via QR.
// Throws RankDeficientError when A_tau is (numerically) rank deficient.
Vector least_squares_on_support(const Matrix& A, const Vector& b,
                                const SupportSet& tau);

// Standard normal quantile: the q with Phi(q) = p. Acklam's rational
// approximation polished by one Newton step on the erfc-based CDF.
double inv_norm_cdf(double p);

// Standard normal CDF (helper for inv_norm_cdf and tests).
double norm_cdf(double x);

// CSV serialization: one matrix row per line, shortest round-trip decimal
// formatting, so write/read is bit-exact.
void write_matrix_csv(std::ostream& os, const Matrix& A);
Matrix read_matrix_csv(std::istream& is);
void save_matrix_csv(const std::string& path, const Matrix& A);
Matrix load_matrix_csv(const std::string& path);

// Vectors serialize as single-column CSV.
void save_vector_csv(const std::string& path, const Vector& v);
Vector load_vector_csv(const std::string& path);

// Shortest decimal string that round-trips to exactly the same double.
std::string format_double(double v);

} // namespace scsa
