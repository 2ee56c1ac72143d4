#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "chebcap/harness.hpp"
#include "chebcap/numerics.hpp"
#include "test_util.hpp"

using namespace chebcap;
using namespace chebcap::testing;

TEST_CASE("Newton on a scalar quadratic") {
  const NewtonResult r = newton_solve(
      [](const Eigen::VectorXd& x) { return Eigen::VectorXd::Constant(1, x(0) * x(0) - 4.0); },
      [](const Eigen::VectorXd& x) { return Eigen::MatrixXd::Constant(1, 1, 2.0 * x(0)); },
      Eigen::VectorXd::Constant(1, 3.0), 1e-14);
  CHECK(std::fabs(r.x(0) - 2.0) <= 1e-14);
  CHECK(r.residual <= 1e-14);
}

TEST_CASE("Newton reports a singular Jacobian and non-convergence") {
  CHECK_THROWS(newton_solve([](const Eigen::VectorXd& x) { return Eigen::VectorXd::Constant(1, x(0) * x(0) + 1.0); },
                            [](const Eigen::VectorXd& x) { return Eigen::MatrixXd::Constant(1, 1, 2.0 * x(0)); },
                            Eigen::VectorXd::Constant(1, 0.0), 1e-14));
  CHECK_THROWS(newton_solve([](const Eigen::VectorXd& x) { return Eigen::VectorXd::Constant(1, x(0) * x(0) + 1.0); },
                            [](const Eigen::VectorXd& x) { return Eigen::MatrixXd::Constant(1, 1, 2.0 * x(0)); },
                            Eigen::VectorXd::Constant(1, 0.5), 1e-14, 20));
}

TEST_CASE("toy problem at alpha = 0 has the zero solution") {
  const Problem p = build_problem(register_toy(0.0, 30));
  const std::vector<double> u = compute_ubar(p);
  for (double x : u) CHECK(x == 0.0);
}

TEST_CASE("toy continuation reaches a small residual") {
  const Problem p = build_problem(register_toy(1.0, 30));
  const std::vector<double> u = compute_ubar(p);
  const PointModel pm = make_point_model(p.spec, point_kmats(p, 30), 30);
  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
  CHECK(pm.residual(x).lpNorm<Eigen::Infinity>() <= 1e-13);
}

TEST_CASE("continuation over an empty range is the identity") {
  const Problem p = build_problem(register_toy(1.0, 10));
  const auto kmats = point_kmats(p, 10);
  FamilyFn family = [&](double a) {
    const PointModel pm = make_point_model(register_toy(a, 10), kmats, 10);
    return std::make_pair(ResidualFn([pm](const Eigen::VectorXd& x) { return pm.residual(x); }),
                          JacobianFn([pm](const Eigen::VectorXd& x) { return pm.jacobian(x); }));
  };
  const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(11);
  CHECK(continuation(family, x0, 0.0, 0.0, 10) == x0);
}

TEST_CASE("approx_inverse examples") {
  CHECK(approx_inverse(Eigen::MatrixXd::Identity(4, 4)).isApprox(Eigen::MatrixXd::Identity(4, 4)));
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  const Eigen::MatrixXd di = approx_inverse(d);
  CHECK(di(0, 0) == doctest::Approx(0.5));
  CHECK(di(1, 1) == doctest::Approx(0.25));
  CHECK(di(0, 1) == 0.0);
  Rng g(47);
  const Eigen::MatrixXd m = random_matrix(g, 10, 10) + 10.0 * Eigen::MatrixXd::Identity(10, 10);
  const Eigen::MatrixXd res = m * approx_inverse(m) - Eigen::MatrixXd::Identity(10, 10);
  CHECK(res.lpNorm<Eigen::Infinity>() <= 1e-12);
  CHECK_THROWS(approx_inverse(Eigen::MatrixXd::Zero(3, 3)));
}

TEST_CASE("approx_eigen examples") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  const EigenDecomp e = approx_eigen(d);
  CHECK(std::abs(e.mu(0) - 3.0) <= 1e-14);
  CHECK(std::abs(e.mu(1) - 1.0) <= 1e-14);
  CHECK(std::abs(e.P(1, 0)) <= 1e-14);
  CHECK(std::abs(e.P(0, 1)) <= 1e-14);

  Eigen::MatrixXd rot(2, 2);
  rot << 0.0, -1.0, 1.0, 0.0;
  const EigenDecomp r = approx_eigen(rot);
  CHECK(std::abs(std::abs(r.mu(0).imag()) - 1.0) <= 1e-14);
  CHECK(std::abs(r.mu(0) - std::conj(r.mu(1))) <= 1e-14);
  CHECK(std::abs(r.mu(0).real()) <= 1e-14);

  Rng g(53);
  Eigen::MatrixXd s = random_matrix(g, 8, 8);
  s = (s + s.transpose()).eval();
  const EigenDecomp se = approx_eigen(s);
  const Eigen::MatrixXcd res = s.cast<std::complex<double>>() * se.P - se.P * se.mu.asDiagonal();
  CHECK(res.cwiseAbs().rowwise().sum().maxCoeff() <= 1e-10);
  const Eigen::MatrixXcd id = se.P * se.Pinv - Eigen::MatrixXcd::Identity(8, 8);
  CHECK(id.cwiseAbs().maxCoeff() <= 1e-10);
  for (int k = 1; k < 8; ++k) CHECK(se.mu(k - 1).real() >= se.mu(k).real());
}

TEST_CASE("approx_eigen normalizes columns to the weighted norm xi") {
  Rng g(59);
  const Eigen::MatrixXd m = random_matrix(g, 6, 6);
  const std::vector<int> idx = {1, 3, 5, 7, 9, 11};
  const EigenDecomp e = approx_eigen(m, idx);
  for (int j = 0; j < 6; ++j) {
    double n = 0.0;
    for (int i = 0; i < 6; ++i) n += xi(idx[static_cast<size_t>(i)]) * std::abs(e.P(i, j));
    CHECK(n == doctest::Approx(xi(idx[static_cast<size_t>(j)])).epsilon(1e-12));
  }
}

TEST_CASE("chebyshev_sine reproduces sin") {
  const Eigen::VectorXd c = chebyshev_sine(1.5, 30);
  std::vector<double> u(c.data(), c.data() + c.size());
  for (double x : {-1.0, -0.4, 0.3, 1.0})
    CHECK(static_cast<double>(chebyshev_derivative(std::vector<double>(u.begin(), u.begin() + 20), 0, x)) ==
          doctest::Approx(std::sin(1.5 * x)).epsilon(1e-12));
}

TEST_CASE("KS steady profile is odd with its extrema at the Neumann endpoints") {
  const Problem p = build_problem(register_ks(1.0, 200));
  const std::vector<double> u = compute_ubar(p);
  const PointModel pm = make_point_model(p.spec, point_kmats(p, 200), 200);
  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
  CHECK(pm.residual(x).lpNorm<Eigen::Infinity>() <= 1e-10);
  for (int n = 0; n < static_cast<int>(u.size()); n += 2) CHECK(u[static_cast<size_t>(n)] == 0.0);
  const CoeffSeq U = CoeffSeq::from_points(u, 1.0, Parity::odd);
  const CoeffSeq v = p.K[0].apply(U);
  const CoeffSeq dv = p.K[1].apply(U);
  int sign_changes = 0;
  double prev = 0.0;
  for (int t = 1; t < 400; ++t) {
    const double xx = -1.0 + 2.0 * t / 400.0;
    CHECK(evaluate_series(v, Interval(xx)).mid() == doctest::Approx(-evaluate_series(v, Interval(-xx)).mid()).epsilon(1e-9));
    const double d = evaluate_series(dv, Interval(xx)).mid();
    if (prev != 0.0 && (d > 0) != (prev > 0)) ++sign_changes;
    prev = d;
  }
  CHECK(sign_changes == 0);
  CHECK(std::fabs(evaluate_series(dv, Interval(1.0)).mid()) <= 1e-10);
  CHECK(evaluate_series(v, Interval(-1.0)).mid() > 5.0);
}
