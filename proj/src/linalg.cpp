#include "scsa/linalg.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace scsa {

Vector matvec(const Matrix& A, const Vector& x) {
  if (x.size() != A.cols())
    throw DimensionError("matvec: vector length " + std::to_string(x.size()) +
                         " does not match matrix cols " +
                         std::to_string(A.cols()));
  return A * x;
}

double gram_spectral_norm(const Matrix& A, double tol, int max_iter) {
  if (A.size() == 0 || A.norm() == 0.0)
    throw DimensionError("gram_spectral_norm: matrix is zero");

  Vector v = Vector::Ones(A.cols());
  v /= v.norm();
  double lambda = 0.0;
  Index restart = 0;
  for (int it = 0; it < max_iter; ++it) {
    Vector w = A.transpose() * (A * v);
    const double nw = w.norm();
    if (nw == 0.0) {
      // Start vector lies in the null space of A^T A; restart from the next
      // basis vector (A nonzero guarantees one works).
      if (restart >= A.cols())
        throw PowerIterationError("gram_spectral_norm: degenerate matrix",
                                  0.0);
      v.setZero();
      v(restart++) = 1.0;
      continue;
    }
    const double lambda_next = v.dot(w);
    v = w / nw;
    if (it > 0 && std::abs(lambda_next - lambda) <= tol * std::abs(lambda_next))
      return lambda_next;
    lambda = lambda_next;
  }
  throw PowerIterationError("gram_spectral_norm: no convergence within " +
                                std::to_string(max_iter) + " iterations",
                            lambda);
}

Vector least_squares_on_support(const Matrix& A, const Vector& b,
                                const SupportSet& tau) {
  const Index k = static_cast<Index>(tau.size());
  if (k == 0) return Vector(0);

  Matrix At(A.rows(), k);
  for (Index j = 0; j < k; ++j) {
    if (tau[j] < 0 || tau[j] >= A.cols())
      throw DimensionError("least_squares_on_support: index out of range");
    At.col(j) = A.col(tau[j]);
  }

  if (At.rows() < k)
    throw RankDeficientError(
        "least_squares_on_support: more columns than rows");

  Eigen::ColPivHouseholderQR<Matrix> qr(At);
  const auto& R = qr.matrixR();
  const double rmax = std::abs(R(0, 0));
  for (Index j = 0; j < k; ++j)
    if (std::abs(R(j, j)) < 1e-12 * rmax)
      throw RankDeficientError(
          "least_squares_on_support: selected columns are rank deficient");

  return qr.solve(b);
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double inv_norm_cdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("inv_norm_cdf: p must lie in (0, 1)");

  // Acklam's rational approximation (relative error < 1.15e-9).
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;

  double q;
  if (p < p_low) {
    const double r = std::sqrt(-2.0 * std::log(p));
    q = (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
        ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double r = p - 0.5;
    const double s = r * r;
    q = (((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s + a[5]) *
        r /
        (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s + 1.0);
  } else {
    const double r = std::sqrt(-2.0 * std::log(1.0 - p));
    q = -(((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r +
          c[5]) /
        ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  }

  // One Newton step on Phi(q) - p.
  const double e = norm_cdf(q) - p;
  const double pdf = std::exp(-0.5 * q * q) / std::sqrt(2.0 * M_PI);
  if (pdf > 1e-300) q -= e / pdf;
  return q;
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& tok) {
  double v = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc())
    throw std::runtime_error("CSV: cannot parse '" + tok + "' as a number");
  return v;
}

} // namespace

void write_matrix_csv(std::ostream& os, const Matrix& A) {
  for (Index i = 0; i < A.rows(); ++i) {
    for (Index j = 0; j < A.cols(); ++j) {
      if (j) os << ',';
      os << format_double(A(i, j));
    }
    os << '\n';
  }
}

Matrix read_matrix_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ',')) row.push_back(parse_double(tok));
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("CSV: ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return Matrix(0, 0);
  Matrix A(static_cast<Index>(rows.size()),
           static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j)
      A(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return A;
}

void save_matrix_csv(const std::string& path, const Matrix& A) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_matrix_csv(os, A);
}

Matrix load_matrix_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_matrix_csv(is);
}

void save_vector_csv(const std::string& path, const Vector& v) {
  save_matrix_csv(path, v);
}

Vector load_vector_csv(const std::string& path) {
  Matrix A = load_matrix_csv(path);
  if (A.cols() > 1 && A.rows() > 1)
    throw std::runtime_error(path + " is not a vector CSV");
  if (A.cols() == 1) return A.col(0);
  return A.row(0).transpose();
}

} // namespace scsa
