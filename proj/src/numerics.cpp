#include "chebcap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace chebcap {

NewtonResult newton_solve(const ResidualFn& F, const JacobianFn& J, const Eigen::VectorXd& x0, double tol,
                          int max_iter) {
  NewtonResult res;
  res.x = x0;
  Eigen::VectorXd f = F(res.x);
  res.residual = f.lpNorm<Eigen::Infinity>();
  const double start = std::max(res.residual, 1.0);
  for (int it = 0; it < max_iter; ++it) {
    if (res.residual <= tol) return res;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(J(res.x));
    if (!(std::fabs(lu.determinant()) > 0.0)) throw std::runtime_error("newton_solve: singular Jacobian");
    const Eigen::VectorXd dx = lu.solve(f);
    if (!dx.allFinite()) throw std::runtime_error("newton_solve: singular Jacobian");
    res.x -= dx;
    f = F(res.x);
    res.residual = f.lpNorm<Eigen::Infinity>();
    res.iterations = it + 1;
    if (!std::isfinite(res.residual) || res.residual > 1e8 * start) throw std::runtime_error("newton_solve: diverged");
    if (dx.lpNorm<Eigen::Infinity>() <= 1e-3 * tol * std::max(1.0, res.x.lpNorm<Eigen::Infinity>()) &&
        res.residual <= 1e3 * tol)
      return res;  // stagnated at roundoff level
  }
  if (res.residual <= tol) return res;
  throw std::runtime_error("newton_solve: tolerance not reached");
}

Eigen::VectorXd continuation(const FamilyFn& family, const Eigen::VectorXd& x0, double from, double to, int steps,
                             double tol) {
  if (steps < 1) throw std::invalid_argument("continuation: steps >= 1 required");
  Eigen::VectorXd x = x0;
  if (from == to) return x;
  double a = from;
  double h = (to - from) / steps;
  int halvings = 0;
  while ((to - a) * (h > 0 ? 1 : -1) > 0) {
    const double next = (std::fabs(to - a) <= std::fabs(h) * (1 + 1e-12)) ? to : a + h;
    try {
      auto [F, J] = family(next);
      // Loosened tolerance on intermediate steps; the final step is solved to tol.
      x = newton_solve(F, J, x, next == to ? tol : std::max(tol, 1e-10), 60).x;
      a = next;
    } catch (const std::runtime_error&) {
      if (++halvings > 12) throw std::runtime_error("continuation: step failure persists");
      h *= 0.5;
    }
  }
  return x;
}

Eigen::MatrixXd approx_inverse(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("approx_inverse: square matrix required");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible()) throw std::runtime_error("approx_inverse: numerically singular");
  return lu.inverse();
}

EigenDecomp approx_eigen(const Eigen::MatrixXd& M, const std::vector<int>& idx) {
  if (M.rows() != M.cols()) throw std::invalid_argument("approx_eigen: square matrix required");
  const int n = static_cast<int>(M.rows());
  if (!idx.empty() && static_cast<int>(idx.size()) != n) throw std::invalid_argument("approx_eigen: index map size");
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, true);
  if (es.info() != Eigen::Success) throw std::runtime_error("approx_eigen: iteration failure");
  const Eigen::VectorXcd ev = es.eigenvalues();
  const Eigen::MatrixXcd vec = es.eigenvectors();
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double ra = ev(a).real(), rb = ev(b).real();
    if (ra != rb) return ra > rb;
    const double ma = std::abs(ev(a)), mb = std::abs(ev(b));
    if (ma != mb) return ma > mb;
    return ev(a).imag() > ev(b).imag();
  });
  auto weight = [&](int r) { return (idx.empty() ? r : idx[static_cast<size_t>(r)]) == 0 ? 1.0 : 2.0; };
  EigenDecomp d;
  d.mu.resize(n);
  d.P.resize(n, n);
  for (int c = 0; c < n; ++c) {
    const int src = order[static_cast<size_t>(c)];
    d.mu(c) = ev(src);
    Eigen::VectorXcd v = vec.col(src);
    double nrm = 0.0;
    for (int r = 0; r < n; ++r) nrm += weight(r) * std::abs(v(r));
    if (!(nrm > 0)) throw std::runtime_error("approx_eigen: zero eigenvector");
    d.P.col(c) = v * (weight(c) / nrm);
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(d.P);
  if (!lu.isInvertible()) throw std::runtime_error("approx_eigen: eigenvector matrix singular");
  d.Pinv = lu.inverse();
  return d;
}

Eigen::VectorXd chebyshev_sine(double a, int N) {
  Eigen::VectorXd U = Eigen::VectorXd::Zero(N + 1);
  for (int n = 1; n <= N; n += 2) {
    const int k = (n - 1) / 2;
    U(n) = ((k % 2) ? -1.0 : 1.0) * std::cyl_bessel_j(static_cast<double>(n), a);
  }
  return U;
}

}  // namespace chebcap
