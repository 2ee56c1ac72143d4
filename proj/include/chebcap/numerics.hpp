#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace chebcap {

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

struct NewtonResult {
  Eigen::VectorXd x;
  double residual = 0.0;  // max-norm of the final residual
  int iterations = 0;
};

// Plain Newton iteration; throws std::runtime_error on a singular Jacobian, divergence, or
// when tol is not reached within max_iter steps.
NewtonResult newton_solve(const ResidualFn& F, const JacobianFn& J, const Eigen::VectorXd& x0, double tol,
                          int max_iter = 50);

// Parameter-dependent system for continuation.
using FamilyFn = std::function<std::pair<ResidualFn, JacobianFn>(double)>;

// Natural-parameter continuation from (x0, from) to `to` in `steps` equal steps; a failed step is
// retried with halved step size (up to 12 halvings).
Eigen::VectorXd continuation(const FamilyFn& family, const Eigen::VectorXd& x0, double from, double to, int steps,
                             double tol = 1e-13);

Eigen::MatrixXd approx_inverse(const Eigen::MatrixXd& M);

struct EigenDecomp {
  Eigen::VectorXcd mu;   // eigenvalues, descending real part
  Eigen::MatrixXcd P;    // eigenvectors, ‖P e_n‖ = ξ_{idx[n]} in the weighted ℓ¹ norm
  Eigen::MatrixXcd Pinv; // floating-point inverse of P
};

// idx[r] is the sequence index of row/column r (identity when empty); it sets the ξ weights.
EigenDecomp approx_eigen(const Eigen::MatrixXd& M, const std::vector<int>& idx = {});

// Coefficients U_n of sin(a x) = U_0 + 2 Σ U_n T_n(x), n ≤ N.
Eigen::VectorXd chebyshev_sine(double a, int N);

}  // namespace chebcap
