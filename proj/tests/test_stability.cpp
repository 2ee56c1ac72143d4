#include <cmath>
#include <complex>

#include "doctest.h"
#include "chebcap/apriori.hpp"
#include "chebcap/harness.hpp"
#include "chebcap/stability.hpp"
#include "properties.hpp"
#include "test_util.hpp"

using namespace chebcap;
using namespace chebcap::testing;

namespace {

struct Setup {
  Problem p;
  ExistenceRun run;
};

Setup make(const std::string& id, double alpha, int N) {
  Problem p = build_problem(register_problem(id, alpha, N, 1.0));
  const CoeffSeq U = CoeffSeq::from_points(compute_ubar(p), 1.0, p.spec.parity);
  ExistenceRun run = prove_existence(p, U);
  return {std::move(p), std::move(run)};
}

const Setup& toy() {
  static const Setup s = make("toy", 1.0, 30);
  return s;
}
const Setup& ks1() {
  static const Setup s = make("ks", 1.0, 200);
  return s;
}
const Setup& ks100() {
  static const Setup s = make("ks", 100.0, 200);
  return s;
}
const GershgorinData& toy_g() {
  static const GershgorinData g = gershgorin_prepare(toy().p, toy().run);
  return g;
}
const GershgorinData& ks1_g() {
  static const GershgorinData g = gershgorin_prepare(ks1().p, ks1().run);
  return g;
}
const GeneralizedData& ks100_gd() {
  static const GeneralizedData g = generalized_prepare(ks100().p, ks100().run);
  return g;
}

DiskEnclosure disk(std::complex<double> c, double r, int index, DiskKind kind = DiskKind::gershgorin_finite) {
  DiskEnclosure d;
  d.center = CInterval(c);
  d.radius = Interval(r);
  d.index = index;
  d.kind = kind;
  return d;
}

bool disks_meet(const DiskEnclosure& a, const DiskEnclosure& b) { return !disks_disjoint(a, b); }

}  // namespace

TEST_CASE("2x2 Gershgorin example") {
  Eigen::MatrixXd m(2, 2);
  m << 2.0, 0.1, 0.1, -1.0;
  const auto disks = gershgorin_disks_of(m);
  const StabilityCertificate sc = count_unstable_gershgorin(disks, Interval(10.0));
  REQUIRE(sc.success);
  CHECK(sc.n_unstable == 1);
  const double mu = 0.5 + std::sqrt(2.25 + 0.01);
  CHECK(mu == doctest::Approx(2.00333).epsilon(1e-5));
  CHECK(in_disk(disks[0], mu, 0.0));
  REQUIRE(sc.unstable_enclosures.size() == 1);
  CHECK(in_disk(sc.unstable_enclosures[0], 1.0 / mu, 0.0));
}

TEST_CASE("a disk crossing the imaginary axis is inconclusive") {
  std::vector<DiskEnclosure> disks = {disk(2.0, 0.1, 0), disk(0.5, 1.0, 1), disk(-3.0, 0.2, 2)};
  const StabilityCertificate sc = count_unstable_gershgorin(disks, Interval(10.0));
  CHECK_FALSE(sc.success);
  CHECK(sc.offending == 1);
  CHECK(sc.status.find("inconclusive") != std::string::npos);

  GeneralizedDisks gd;
  gd.ok = true;
  gd.delta = Interval(0.1);
  DiskEnclosure a = disk(-5.0, 0.5, 0, DiskKind::generalized);
  DiskEnclosure b = disk(0.2, 0.5, 1, DiskKind::generalized);
  gd.disks = {a, b};
  const StabilityCertificate gc = count_unstable_generalized(gd, Interval(10.0));
  CHECK_FALSE(gc.success);
  CHECK(gc.offending == 1);
}

TEST_CASE("stable generalized disks give no unstable eigenvalue") {
  GeneralizedDisks gd;
  gd.ok = true;
  gd.delta = Interval(0.5);
  for (int j = 0; j < 4; ++j) gd.disks.push_back(disk(-1.0 - j, 0.5 * (1.0 + j), j, DiskKind::generalized));
  const StabilityCertificate gc = count_unstable_generalized(gd, Interval(10.0));
  CHECK(gc.success);
  CHECK(gc.n_unstable == 0);
}

TEST_CASE("invert_disk contains the reciprocal of every point") {
  Rng g(67);
  int bad = 0;
  for (int s = 0; s < 200; ++s) {
    const std::complex<double> c(uniform(g, -3, 3), uniform(g, -3, 3));
    const double r = uniform(g, 0.0, 0.9) * std::abs(c);
    const DiskEnclosure inv = invert_disk(disk(c, r, 0));
    for (int t = 0; t < 16; ++t) {
      const std::complex<double> z = c + std::polar(r * uniform(g, 0.0, 1.0), uniform(g, 0.0, 6.283185307179586));
      if (!in_disk(inv, 1.0 / z, 1e-12)) ++bad;
    }
  }
  CHECK(bad == 0);
  CHECK_THROWS(invert_disk(disk(0.5, 1.0, 0)));
}

TEST_CASE("Gershgorin counting against brute-force eigenvalues") {
  const PropertyResult r = property_gershgorin_counting();
  INFO(r.first_violation);
  CHECK(r.cases > 50);
  CHECK(r.violations == 0);
}

TEST_CASE("toy finite disks and tail") {
  const GershgorinData& g = toy_g();
  double lo = 1e300, hi = -1e300;
  for (int n = 0; n <= g.N; ++n) {
    const DiskEnclosure d = gershgorin_finite(g, n);
    lo = std::fmin(lo, disk_re_min(d));
    hi = std::fmax(hi, disk_re_max(d));
  }
  CHECK(lo >= -0.75);
  CHECK(hi <= 1.08e-4);
  const DiskEnclosure t = gershgorin_tail(g, g.N + 1);
  CHECK(t.kind == DiskKind::gershgorin_tail);
  CHECK(t.center.re.contains(0.0));
  CHECK(t.radius.hi <= 4.6e-3);
  CHECK_THROWS(gershgorin_tail(g, g.N));
}

TEST_CASE("tail radius is nonincreasing") {
  for (const GershgorinData* g : {&toy_g(), &ks1_g()}) {
    double prev = gershgorin_tail(*g, g->N + 1).radius.hi;
    for (int n = g->N + 2; n <= g->N + 50; ++n) {
      const double r = gershgorin_tail(*g, n).radius.hi;
      CHECK(r <= prev);
      prev = r;
    }
  }
}

TEST_CASE("toy stability by Gershgorin") {
  const AprioriBound ab = apriori_lambda_max(toy().p, toy().run.cert, default_mu("toy", 1.0));
  CHECK(ab.self_adjoint);
  CHECK(ab.lambda_max.hi <= 1.43);
  const StabilityCertificate sc = prove_stability(toy().p, toy().run, MethodPref::gershgorin, default_mu("toy", 1.0));
  REQUIRE(sc.success);
  CHECK(sc.n_unstable == 0);
  CHECK(sc.stable_bound_ok);
  CHECK(sc.stable_bound.hi <= -1.33);
}

TEST_CASE("KS alpha = 1 unstable disk and tail") {
  const GershgorinData& g = ks1_g();
  const DiskEnclosure d = gershgorin_finite(g, 1);
  CHECK(std::fabs(d.center.re.mid() - 0.2812486004933086) <= 1e-10);
  CHECK(std::fabs(d.center.im.mid()) <= 1e-10);
  CHECK(d.radius.hi <= 1e-10);
  CHECK(gershgorin_tail(g, g.N + 1).radius.hi <= 6.53e-4);
  for (int n = 0; n <= g.N; n += 2) CHECK_FALSE(gershgorin_finite(g, n).active);
}

TEST_CASE("a priori bounds for KS") {
  const AprioriBound a1 = apriori_lambda_max(ks1().p, ks1().run.cert, 463.1);
  CHECK(a1.lambda_max.hi <= 76.51);
  CHECK_FALSE(a1.self_adjoint);
  const AprioriBound a100 = apriori_lambda_max(ks100().p, ks100().run.cert, 377.0);
  CHECK(a100.lambda_max.hi <= 8.24e4);
}

TEST_CASE("KS alpha = 1: both methods agree") {
  const StabilityCertificate g = prove_stability(ks1().p, ks1().run, MethodPref::gershgorin, 463.1);
  const StabilityCertificate q = prove_stability(ks1().p, ks1().run, MethodPref::generalized, 463.1);
  REQUIRE(g.success);
  REQUIRE(q.success);
  CHECK(g.n_unstable == 1);
  CHECK(q.n_unstable == 1);
  REQUIRE(g.unstable_enclosures.size() == 1);
  REQUIRE(q.unstable_enclosures.size() == 1);
  const DiskEnclosure& eg = g.unstable_enclosures[0];
  CHECK(std::fabs(eg.center.re.mid() - 3.55557324817263) <= 1e-9);
  CHECK(eg.radius.hi <= 1e-9);
  CHECK(in_disk(eg, 3.55557324817263, 1e-9));
  CHECK(disks_meet(eg, q.unstable_enclosures[0]));
  CHECK(g.stable_bound_ok);
  CHECK(g.stable_bound.hi <= -400.0);
}

TEST_CASE("KS alpha = 100 generalized enclosure") {
  const GeneralizedData& gd = ks100_gd();
  const AprioriBound ab = apriori_lambda_max(ks100().p, ks100().run.cert, 377.0);
  const GeneralizedDisks first = generalized_disks(gd, ab.lambda_max);
  REQUIRE(first.ok);
  CHECK(first.delta.hi <= 0.01);
  const StabilityCertificate sc = generalized_with_refinement(gd, ab.lambda_max, 2);
  REQUIRE(sc.success);
  CHECK(sc.n_unstable == 2);
  REQUIRE(sc.delta_history.size() == 2);
  CHECK(sc.delta_history[1] < sc.delta_history[0]);
  REQUIRE(sc.unstable_enclosures.size() == 2);
  for (const auto& e : sc.unstable_enclosures) {
    CHECK(std::fabs(e.center.re.mid() - 1173.40) <= 0.01 * 1173.40);
    CHECK(std::fabs(std::fabs(e.center.im.mid()) - 1426.49) <= 0.01 * 1426.49);
    CHECK(e.radius.hi <= 0.01 * std::abs(e.center.mid()));
  }
  CHECK(sc.unstable_enclosures[0].center.im.mid() * sc.unstable_enclosures[1].center.im.mid() < 0);
}

TEST_CASE("delta is nondecreasing in lambda_max") {
  const GeneralizedData& gd = ks100_gd();
  for (double lm : {100.0, 1000.0, 2000.0}) {
    const GeneralizedDisks a = generalized_delta(gd.q, gd.eps_base, gd.gamma_2m, Interval(lm));
    const GeneralizedDisks b = generalized_delta(gd.q, gd.eps_base, gd.gamma_2m, Interval(2 * lm));
    REQUIRE(a.ok);
    if (b.ok) CHECK(b.delta.hi >= a.delta.hi);
  }
}

TEST_CASE("pure linear problem has vanishing multiplier terms") {
  Problem p = build_problem(register_toy(0.0, 30));
  const ExistenceRun run = prove_existence(p, CoeffSeq(31), IMat::identity(31));
  REQUIRE(run.cert.success);
  const GeneralizedData gd = generalized_prepare(p, run);
  for (const char* k : {"beta01", "beta02", "beta11", "beta13"}) {
    INFO(k);
    CHECK(gd.q.at(k).hi == 0.0);
  }
  const GeneralizedDisks d = generalized_disks(gd, Interval(1.0));
  REQUIRE(d.ok);
  CHECK(d.beta0.hi == 0.0);
  const StabilityCertificate sc = count_unstable_generalized(d, Interval(1.0));
  CHECK(sc.success);
  CHECK(sc.n_unstable == 0);
}

TEST_CASE("toy pseudo-diagonalization leaves a nearly diagonal matrix") {
  const GershgorinData& g = toy_g();
  double off = 0.0;
  for (int j = 0; j <= g.N; ++j)
    for (int i = 0; i <= g.N; ++i)
      if (i != j) off = std::fmax(off, cabs_up(g.Mbar.at(i, j)));
  CHECK(off <= 1e-10);
  CHECK(g.contraction.lo > 0.0);
}
