#pragma once

#include "scsa/linalg.hpp"

namespace scsa {

// min ||W x||_1 subject to A x = b, with W = diag(w), w > 0. The inner
// subproblem of the LP-based solver, the min-ell_1 initialization, and the
// reweighted-ell_1 baseline all reduce to this.
struct WeightedL1Problem {
  Matrix A;  // n x m, n < m
  Vector b;  // length n
  Vector w;  // length m, strictly positive
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MaxIterError : public std::runtime_error {
 public:
  MaxIterError(const std::string& what, Vector iterate)
      : std::runtime_error(what), best_iterate(std::move(iterate)) {}
  Vector best_iterate;
};

// Splits x into its positive and negative parts: xp - xm = x with
// xp, xm >= 0 and disjoint supports.
std::pair<Vector, Vector> split_positive_orthant(const Vector& x);

// ADMM on the nonnegative split form min <c, y> s.t. [A, -A] y = b, y >= 0
// with c = [w; w] (Boyd et al. 2011 scheme; the y-step projects onto the
// affine constraint through a cached factorization of A A^T). Stops on the
// combined absolute/relative primal and dual residual test at `tol`.
// `iters_out`, when given, receives the ADMM iteration count.
Vector solve_weighted_l1(const WeightedL1Problem& prob, double tol = 1e-8,
                         int max_iter = 20000, int* iters_out = nullptr);

} // namespace scsa
