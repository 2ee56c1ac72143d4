#include <cstring>

#include "doctest.h"
#include "chebcap/dense.hpp"
#include "test_util.hpp"

using namespace chebcap;
using namespace chebcap::testing;

namespace {

bool bit_identical(const IMat& a, const IMat& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  return std::memcmp(a.data.data(), b.data.data(), a.data.size() * sizeof(Interval)) == 0;
}

}  // namespace

TEST_CASE("parallel interval product matches the serial reference bit for bit") {
  Rng g(79);
  for (int s = 0; s < 5; ++s) {
    const int n = uniform_int(g, 1, 90), k = uniform_int(g, 1, 90), m = uniform_int(g, 1, 90);
    const IMat a = random_imat(g, n, k);
    const IMat b = random_imat(g, k, m);
    const IMat p = imat_mul(a, b);
    const IMat q = imat_mul_serial(a, b);
    CHECK(bit_identical(p, q));
  }
}

TEST_CASE("parallel complex product matches the serial reference bit for bit") {
  Rng g(83);
  for (int s = 0; s < 5; ++s) {
    const int n = uniform_int(g, 1, 70), k = uniform_int(g, 1, 70), m = uniform_int(g, 1, 70);
    CIMat a(n, k), b(k, m);
    a.re = random_imat(g, n, k);
    a.im = random_imat(g, n, k);
    b.re = random_imat(g, k, m);
    b.im = random_imat(g, k, m);
    const CIMat p = cimat_mul(a, b);
    const CIMat q = cimat_mul_serial(a, b);
    CHECK(bit_identical(p.re, q.re));
    CHECK(bit_identical(p.im, q.im));
  }
}

TEST_CASE("interval product encloses the floating-point product") {
  Rng g(89);
  const IMat a = random_imat(g, 20, 30);
  const IMat b = random_imat(g, 30, 10);
  const IMat p = imat_mul(a, b);
  const Eigen::MatrixXd m = a.mid() * b.mid();
  for (int j = 0; j < 10; ++j)
    for (int i = 0; i < 20; ++i) CHECK(p(i, j).contains(m(i, j)) );
}

TEST_CASE("worker count is positive") { CHECK(worker_threads() >= 1); }
