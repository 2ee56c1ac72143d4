#include <cmath>
#include <cstdint>
#include <limits>

#include "doctest.h"
#include "chebcap/interval.hpp"
#include "properties.hpp"
#include "test_util.hpp"

using namespace chebcap;
using namespace chebcap::testing;

TEST_CASE("iv_arith examples") {
  const Interval s = iv_arith(Interval(1.0), Interval(2.0), ArithOp::add);
  CHECK(s.lo == 3.0);
  CHECK(s.hi == 3.0);

  const Interval p = iv_arith(Interval(1.0, 2.0), Interval(-1.0, 1.0), ArithOp::mul);
  CHECK(p.lo == -2.0);
  CHECK(p.hi == 2.0);

  const Interval q = iv_arith(Interval(1.0), Interval(3.0), ArithOp::div);
  CHECK(q.lo < q.hi);
  CHECK(q.lo <= 0.3333333333333333);
  CHECK(q.hi >= 0.33333333333333337);
  CHECK(static_cast<long double>(q.lo) < 1.0L / 3.0L);
  CHECK(static_cast<long double>(q.hi) > 1.0L / 3.0L);
}

TEST_CASE("division by an interval containing zero gives the whole line") {
  CHECK(iv_arith(Interval(1.0), Interval(-1.0, 1.0), ArithOp::div).is_whole());
  CHECK(iv_arith(Interval(1.0), Interval(0.0), ArithOp::div).is_whole());
}

TEST_CASE("overflow saturates to the whole line") {
  const double big = std::numeric_limits<double>::max();
  CHECK(iv_arith(Interval(big), Interval(big), ArithOp::add).is_whole());
  CHECK(iv_arith(Interval(big), Interval(2.0), ArithOp::mul).is_whole());
  CHECK((Interval::whole() + Interval(1.0)).is_whole());
}

TEST_CASE("constructor rejects reversed endpoints") {
  CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Interval(std::nan(""), 1.0), std::invalid_argument);
}

TEST_CASE("iv_sqrt examples") {
  const Interval a = iv_sqrt(Interval(4.0));
  CHECK(a.contains(2.0));
  CHECK(a.width_up() <= 4 * std::numeric_limits<double>::epsilon());

  const Interval b = iv_sqrt(Interval(2.0));
  CHECK(b.lo <= std::sqrt(2.0));
  CHECK(b.hi >= std::sqrt(2.0));
  CHECK(std::nextafter(std::nextafter(b.lo, 3.0), 3.0) >= b.hi);
  CHECK((Interval(b.lo) * Interval(b.lo)).lo <= 2.0);
  CHECK((Interval(b.hi) * Interval(b.hi)).hi >= 2.0);

  const Interval c = iv_sqrt(Interval(0.0, 1.0));
  CHECK(c.lo == 0.0);
  CHECK(c.hi == 1.0);

  CHECK_THROWS_AS(iv_sqrt(Interval(-1.0, 1.0)), std::domain_error);
}

TEST_CASE("gamma_ratio examples") {
  const Interval g0 = gamma_ratio(1, 0);
  CHECK(g0.lo == 1.0);
  CHECK(g0.hi == 1.0);
  CHECK(gamma_ratio(1, 3).contains(4.0));
  CHECK(gamma_ratio(1, 3).width_up() <= 1e-14);
  CHECK(gamma_ratio(2, 2).contains(10.0));
  CHECK(gamma_ratio(2, 2).width_up() <= 1e-14);
}

TEST_CASE("gamma_ratio contains the exact binomial for k <= 6, n <= 50") {
  // Γ(2k+n)/(Γ(2k)n!) = C(2k+n-1, n).
  int bad = 0;
  for (int k = 1; k <= 6; ++k) {
    std::uint64_t c = 1;
    for (int n = 0; n <= 50; ++n) {
      if (n > 0) c = c * static_cast<std::uint64_t>(2 * k + n - 1) / static_cast<std::uint64_t>(n);
      const Interval g = gamma_ratio(k, n);
      const long double exact = static_cast<long double>(c);
      if (!(g.lo <= exact && exact <= g.hi)) ++bad;
      if (g.width_up() > 1e-12 * static_cast<double>(c)) ++bad;
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("interval containment fuzzing") {
  const PropertyResult r = property_interval_containment();
  INFO(r.first_violation);
  CHECK(r.cases >= 100000);
  CHECK(r.violations == 0);
}

TEST_CASE("monotone inclusion") {
  Rng g(11);
  int bad = 0;
  for (int s = 0; s < 5000; ++s) {
    const double a0 = uniform(g, -5, 5), a1 = a0 + uniform(g, 0, 1);
    const double b0 = uniform(g, -5, 5), b1 = b0 + uniform(g, 0, 1);
    const Interval a(a0, a1), b(b0, b1);
    const Interval A(a0 - uniform(g, 0, 1), a1 + uniform(g, 0, 1));
    const Interval B(b0 - uniform(g, 0, 1), b1 + uniform(g, 0, 1));
    for (ArithOp op : {ArithOp::add, ArithOp::sub, ArithOp::mul, ArithOp::div}) {
      const Interval small = iv_arith(a, b, op);
      const Interval large = iv_arith(A, B, op);
      if (!small.subset_of(large)) ++bad;
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("hex round trip is bit exact") {
  Rng g(13);
  for (int s = 0; s < 1000; ++s) {
    const double x = std::ldexp(uniform(g, -1, 1), uniform_int(g, -300, 300));
    CHECK(from_hex(to_hex(x)) == x);
  }
  CHECK(from_hex(to_hex(0.1)) == 0.1);
  CHECK(std::signbit(from_hex(to_hex(-0.0))));
}

TEST_CASE("ipow encloses integer powers") {
  CHECK(ipow(Interval(2.0), 10).contains(1024.0));
  CHECK(ipow(Interval(-2.0, 1.0), 2).subset_of(Interval(0.0, 4.0)));
  CHECK(ipow(Interval(3.0), 0).contains(1.0));
}
