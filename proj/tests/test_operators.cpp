#include <cmath>

#include "doctest.h"
#include "chebcap/operators.hpp"
#include "properties.hpp"
#include "test_util.hpp"

using namespace chebcap;
using namespace chebcap::testing;

namespace {

CoeffSeq unit(int n, int order = 0) {
  CoeffSeq e(n + 1);
  e[n] = Interval(1.0);
  e.basis_order = order;
  return e;
}

}  // namespace

TEST_CASE("apply_Dk examples") {
  const CoeffSeq e2 = basis_Ek(2, 1.0);
  const CoeffSeq d1 = apply_Dk(e2, 1);
  CHECK(d1.basis_order == 1);
  CHECK(d1.at(1).contains(1.0));
  const CoeffSeq d2 = apply_Dk(e2, 2);
  CHECK(d2.basis_order == 2);
  CHECK(d2.at(0).contains(4.0));
  for (int k = 1; k <= 4; ++k) CHECK(seq_contains_zero(apply_Dk(CoeffSeq(8), k)));
}

TEST_CASE("apply_shift examples") {
  const CoeffSeq u = CoeffSeq::from_points({1.0, 2.0, 3.0});
  const CoeffSeq s = apply_shift(u, 1);
  CHECK(s.at(0).contains(0.0));
  CHECK(s.at(1).contains(1.0));
  CHECK(s.at(3).contains(3.0));
  const CoeffSeq s2 = apply_shift(CoeffSeq::from_points({5.0}), 2);
  CHECK(s2.at(2).contains(5.0));
  CHECK(s2.at(1).contains(0.0));
  CHECK(seq_overlap(apply_shift(u, 0), u));
}

TEST_CASE("apply_Ddag examples") {
  CoeffSeq e3 = basis_Ek(3, 1.0);
  e3.basis_order = 2;
  const CoeffSeq d = apply_Ddag(e3, 2);
  CHECK(d.at(3).contains(1.0 / 12.0));
  CHECK(d.at(3).width_up() <= 1e-16);
  CoeffSeq z(5);
  z.basis_order = 1;
  CHECK(seq_contains_zero(apply_Ddag(z, 1)));
}

TEST_CASE("change_basis examples") {
  const CoeffSeq u = CoeffSeq::from_points({0.3, 0.1, -0.2});
  CHECK(seq_overlap(change_basis(u, 0, 0), u));
  const CoeffSeq c = change_basis(basis_Ek(0, 1.0), 0, 1);
  CHECK(c.basis_order == 1);
  CHECK(c.at(0).contains(1.0));
  CHECK(c.at(2).contains(0.0));
  const CoeffSeq t2 = change_basis(CoeffSeq::from_points({0.0, 0.0, 0.5}), 0, 1);
  CHECK(t2.at(0).contains(-0.5));
  CHECK(t2.at(1).contains(0.0));
  CHECK(t2.at(2).contains(0.25));
  CoeffSeq g(3);
  g.basis_order = 2;
  CHECK_THROWS(change_basis(g, 2, 1));
}

TEST_CASE("antiderivative examples") {
  // ∫T_4 = T_5/10 − T_3/6, so 𝒮^{(1)}E_4 = (1/10)E_5 − (1/6)E_3 at ν = 1.
  const CoeffSeq s = apply_Si(basis_Ek(4, 1.0), 1);
  CHECK(s.at(3).contains(-1.0 / 12.0));
  CHECK(s.at(5).contains(1.0 / 20.0));
  CHECK(s.at(4).contains(0.0));
  CHECK(s.at(0).contains(0.0));
  const CoeffSeq s2 = apply_Si(basis_Ek(4, 2.0), 1);
  const CoeffSeq expect = Interval::frac(1.0, 5.0) * basis_Ek(5, 2.0) - Interval::frac(1.0, 12.0) * basis_Ek(3, 2.0);
  CHECK(seq_overlap(s2, expect));
  for (int k = 2; k <= 30; ++k) {
    const double nu = 1.5;
    const Interval n = norm_ell1nu(apply_Si(basis_Ek(k, nu), 1));
    CHECK(n.overlaps(Interval(nu / (2.0 * (k + 1)) + 1.0 / (2.0 * nu * (k - 1)))));
  }
}

TEST_CASE("apply_S vanishes at -1 and differentiates back") {
  Rng g(31);
  for (int s = 0; s < 30; ++s) {
    const CoeffSeq u = random_seq(g, 10);
    const CoeffSeq a = apply_S(u);
    CHECK(boundary_eval(a, 0, -1).contains_zero());
    const std::vector<double> am = a.midpoints();
    const std::vector<double> um = u.midpoints();
    for (double x : {-0.7, 0.1, 0.9}) {
      const long double d = chebyshev_derivative(am, 1, x);
      const long double v = chebyshev_derivative(um, 0, x);
      CHECK(std::fabs(static_cast<double>(d - v)) <= 1e-11);
    }
  }
}

TEST_CASE("boundary_eval examples") {
  CHECK(boundary_eval(basis_Ek(2, 1.0), 0, 1).contains(1.0));
  CHECK(boundary_eval(basis_Ek(3, 1.0), 0, -1).contains(-1.0));
  CHECK(boundary_eval(basis_Ek(2, 1.0), 1, 1).contains(4.0));
}

TEST_CASE("boundary_eval matches the power-basis oracle") {
  Rng g(37);
  for (int s = 0; s < 30; ++s) {
    const CoeffSeq u = random_seq(g, 13);
    const std::vector<double> m = u.midpoints();
    for (int j = 0; j <= 4; ++j)
      for (int e : {-1, 1}) {
        const double ref = static_cast<double>(chebyshev_derivative(m, j, e));
        const Interval b = boundary_eval(u, j, e);
        CHECK(std::fabs(ref - b.mid()) <= 1e-9 * (1.0 + std::fabs(ref)));
      }
  }
}

TEST_CASE("build_B examples") {
  const BoundaryFunctionals d = build_B(BoundarySpec::dirichlet());
  REQUIRE(d.count() == 2);
  CHECK(d.apply_row(0, basis_Ek(2, 1.0)).contains(1.0));
  CHECK(d.apply_row(1, basis_Ek(2, 1.0)).contains(1.0));

  const BoundaryFunctionals ks = build_B(BoundarySpec::neumann_odd_biharmonic(), Parity::odd);
  REQUIRE(ks.count() == 2);
  CoeffSeq e3 = basis_Ek(3, 1.0);
  e3.parity = Parity::odd;
  CHECK(ks.apply_row(0, e3).contains(9.0));

  for (const auto& v : d.apply(CoeffSeq(6))) CHECK(v.contains(0.0));
}

TEST_CASE("derivative consistency against exact polynomial differentiation") {
  Rng g(41);
  int bad = 0;
  for (int s = 0; s < 20; ++s) {
    const CoeffSeq u = random_seq(g, 13);
    const std::vector<double> m = u.midpoints();
    for (int k = 1; k <= 4; ++k) {
      const CoeffSeq d = apply_Dk(u, k);
      for (int t = 0; t < 20; ++t) {
        const double x = std::cos(M_PI * (t + 0.5) / 20.0);
        const double ref = static_cast<double>(chebyshev_derivative(m, k, x));
        const Interval v = evaluate_series(d, Interval(x));
        if (std::fabs(ref - v.mid()) > 1e-9 * (1.0 + std::fabs(ref)) + v.rad_up()) ++bad;
      }
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("change of basis preserves the represented function") {
  Rng g(43);
  for (int s = 0; s < 30; ++s) {
    CoeffSeq u = random_seq(g, 10);
    const int k = uniform_int(g, 0, 2);
    const int l = k + uniform_int(g, 0, 3);
    u.basis_order = k;
    const CoeffSeq c = change_basis(u, k, l);
    for (double x : {-1.0, -0.3, 0.4, 1.0}) CHECK(evaluate_series(u, Interval(x)).overlaps(evaluate_series(c, Interval(x))));
  }
}

TEST_CASE("operator identities on random inputs") {
  const PropertyResult r = property_operator_identities();
  INFO(r.first_violation);
  CHECK(r.cases > 0);
  CHECK(r.violations == 0);
}

TEST_CASE("banded supports stay within the declared bandwidth") {
  int bad = 0;
  for (int n = 6; n <= 20; ++n) {
    for (int k = 0; k <= 2; ++k)
      for (int l = k; l <= k + 3; ++l) {
        const BandedOp op{BandKind::change, k, l};
        const CoeffSeq out = apply_shift(op.apply(unit(n, k)), l - k);
        for (int q = 0; q < out.size(); ++q)
          if (!out.at(q).contains(0.0) && std::abs(q - n) > op.bandwidth()) ++bad;
      }
    for (int i = 1; i <= 3; ++i) {
      const BandedOp op{BandKind::antideriv_i, i, 0};
      const CoeffSeq out = op.apply(unit(n));
      for (int q = 0; q < out.size(); ++q)
        if (!out.at(q).contains(0.0) && std::abs(q - n) > op.bandwidth()) ++bad;
    }
    for (int k = 1; k <= 3; ++k) {
      const BandedOp op{BandKind::derivative, k, 0};
      const CoeffSeq out = apply_shift(op.apply(unit(n)), k);
      for (int q = 0; q < out.size(); ++q)
        if (!out.at(q).contains(0.0) && std::abs(q - n) > op.bandwidth()) ++bad;
    }
    const BandedOp s{BandKind::antideriv, 1, 0};
    const CoeffSeq out = s.apply(unit(n));
    for (int q = 1; q < out.size(); ++q)
      if (!out.at(q).contains(0.0) && std::abs(q - n) > s.bandwidth()) ++bad;
  }
  CHECK(bad == 0);
}
