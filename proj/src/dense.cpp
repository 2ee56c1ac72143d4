#include "chebcap/dense.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include <omp.h>

namespace chebcap {

CoeffSeq IMat::column(int j, double nu, Parity p) const {
  CoeffSeq c(rows, nu, p);
  for (int i = 0; i < rows; ++i) c[i] = (*this)(i, j);
  return c;
}

void IMat::set_column(int j, const CoeffSeq& v) {
  for (int i = 0; i < rows; ++i) (*this)(i, j) = v.at(i);
  for (int i = rows; i < v.size(); ++i)
    if (!(v[i].lo == 0 && v[i].hi == 0)) throw std::out_of_range("IMat::set_column: support exceeds rows");
}

IMat IMat::identity(int n) {
  IMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Interval(1.0);
  return m;
}

IMat IMat::from_point(const Eigen::MatrixXd& m) {
  IMat r(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int j = 0; j < r.cols; ++j)
    for (int i = 0; i < r.rows; ++i) r(i, j) = Interval(m(i, j));
  return r;
}

Eigen::MatrixXd IMat::mid() const {
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = (*this)(i, j).mid();
  return m;
}

IMat IMat::resized(int r, int c) const {
  IMat m(r, c);
  for (int j = 0; j < std::min(c, cols); ++j)
    for (int i = 0; i < std::min(r, rows); ++i) m(i, j) = (*this)(i, j);
  return m;
}

IMat IMat::masked(int r0, int r1, int c0, int c1) const {
  IMat m(rows, cols);
  for (int j = std::max(c0, 0); j <= std::min(c1, cols - 1); ++j)
    for (int i = std::max(r0, 0); i <= std::min(r1, rows - 1); ++i) m(i, j) = (*this)(i, j);
  return m;
}

static void check_same(const IMat& a, const IMat& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("IMat: shape mismatch");
}

IMat operator+(const IMat& a, const IMat& b) {
  check_same(a, b);
  IMat r(a.rows, a.cols);
  for (size_t k = 0; k < a.data.size(); ++k) r.data[k] = a.data[k] + b.data[k];
  return r;
}

IMat operator-(const IMat& a, const IMat& b) {
  check_same(a, b);
  IMat r(a.rows, a.cols);
  for (size_t k = 0; k < a.data.size(); ++k) r.data[k] = a.data[k] - b.data[k];
  return r;
}

IMat operator*(const Interval& s, const IMat& a) {
  IMat r = a;
  for (auto& x : r.data) x = s * x;
  return r;
}

int worker_threads() {
  static const int n = [] {
    if (const char* env = std::getenv("CHEBCAP_THREADS")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
    return omp_get_max_threads();
  }();
  return n;
}

namespace {

inline bool is_zero(const Interval& x) { return x.lo == 0 && x.hi == 0; }

// Output column j of a·b; shared by both kernels so their results coincide bitwise.
void mul_column(const IMat& a, const IMat& b, IMat& c, int j) {
  Interval* out = &c(0, j);
  for (int k = 0; k < a.cols; ++k) {
    const Interval& bkj = b(k, j);
    if (is_zero(bkj)) continue;
    const Interval* acol = &a(0, k);
    for (int i = 0; i < a.rows; ++i) {
      if (is_zero(acol[i])) continue;
      out[i] += acol[i] * bkj;
    }
  }
}

void check_mul(const IMat& a, const IMat& b) {
  if (a.cols != b.rows) throw std::invalid_argument("imat_mul: inner dimension mismatch");
}

}  // namespace

IMat imat_mul(const IMat& a, const IMat& b) {
  check_mul(a, b);
  IMat c(a.rows, b.cols);
#pragma omp parallel for schedule(dynamic, 4) num_threads(worker_threads())
  for (int j = 0; j < b.cols; ++j) mul_column(a, b, c, j);
  return c;
}

IMat imat_mul_serial(const IMat& a, const IMat& b) {
  check_mul(a, b);
  IMat c(a.rows, b.cols);
  for (int j = 0; j < b.cols; ++j) mul_column(a, b, c, j);
  return c;
}

CoeffSeq imat_apply(const IMat& a, const CoeffSeq& v) {
  if (v.size() > a.cols) {
    for (int k = a.cols; k < v.size(); ++k)
      if (!is_zero(v[k])) throw std::out_of_range("imat_apply: input support exceeds columns");
  }
  CoeffSeq r(a.rows, v.nu, Parity::none);
  for (int k = 0; k < std::min(a.cols, v.size()); ++k) {
    if (is_zero(v[k])) continue;
    for (int i = 0; i < a.rows; ++i) r[i] += a(i, k) * v[k];
  }
  return r;
}

Interval column_norm(const IMat& a, int j, double nu) {
  Interval s(0.0);
  for (int i = 0; i < a.rows; ++i) {
    const Interval& x = a(i, j);
    if (is_zero(x)) continue;
    s += abs(x) * Interval(static_cast<double>(xi(i))) * nu_pow(nu, i);
  }
  return s / (Interval(static_cast<double>(xi(j))) * nu_pow(nu, j));
}

Interval imat_opnorm(const IMat& a, double nu) {
  std::vector<Interval> cols(static_cast<size_t>(a.cols));
#pragma omp parallel for schedule(static) num_threads(worker_threads())
  for (int j = 0; j < a.cols; ++j) cols[static_cast<size_t>(j)] = column_norm(a, j, nu);
  return op_norm(cols, Interval(0.0));
}

CIMat CIMat::from_point(const Eigen::MatrixXcd& m) {
  CIMat r(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int j = 0; j < r.cols(); ++j)
    for (int i = 0; i < r.rows(); ++i) {
      r.re(i, j) = Interval(m(i, j).real());
      r.im(i, j) = Interval(m(i, j).imag());
    }
  return r;
}

Eigen::MatrixXcd CIMat::mid() const {
  Eigen::MatrixXcd m(rows(), cols());
  for (int j = 0; j < cols(); ++j)
    for (int i = 0; i < rows(); ++i) m(i, j) = {re(i, j).mid(), im(i, j).mid()};
  return m;
}

CIMat operator+(const CIMat& a, const CIMat& b) {
  CIMat r;
  r.re = a.re + b.re;
  r.im = a.im + b.im;
  return r;
}

CIMat operator-(const CIMat& a, const CIMat& b) {
  CIMat r;
  r.re = a.re - b.re;
  r.im = a.im - b.im;
  return r;
}

CIMat cimat_mul(const CIMat& a, const CIMat& b) {
  CIMat r;
  r.re = imat_mul(a.re, b.re) - imat_mul(a.im, b.im);
  r.im = imat_mul(a.re, b.im) + imat_mul(a.im, b.re);
  return r;
}

CIMat cimat_mul_serial(const CIMat& a, const CIMat& b) {
  CIMat r;
  r.re = imat_mul_serial(a.re, b.re) - imat_mul_serial(a.im, b.im);
  r.im = imat_mul_serial(a.re, b.im) + imat_mul_serial(a.im, b.re);
  return r;
}

CIMat cimat_mul(const CIMat& a, const IMat& b) {
  CIMat r;
  r.re = imat_mul(a.re, b);
  r.im = imat_mul(a.im, b);
  return r;
}

CIMat cimat_mul(const IMat& a, const CIMat& b) {
  CIMat r;
  r.re = imat_mul(a, b.re);
  r.im = imat_mul(a, b.im);
  return r;
}

Interval column_norm(const CIMat& a, int j) {
  Interval s(0.0);
  for (int i = 0; i < a.rows(); ++i) {
    const CInterval z = a.at(i, j);
    if (is_zero(z.re) && is_zero(z.im)) continue;
    const Interval m = is_zero(z.im) ? abs(z.re) : is_zero(z.re) ? abs(z.im) : cabs(z);
    s += m * Interval(static_cast<double>(xi(i)));
  }
  return s / Interval(static_cast<double>(xi(j)));
}

Interval cvec_norm(const CIMat& v, int j) { return column_norm(v, j) * Interval(static_cast<double>(xi(j))); }

Interval cimat_opnorm(const CIMat& a) {
  std::vector<Interval> cols(static_cast<size_t>(a.cols()));
#pragma omp parallel for schedule(static) num_threads(worker_threads())
  for (int j = 0; j < a.cols(); ++j) cols[static_cast<size_t>(j)] = column_norm(a, j);
  return op_norm(cols, Interval(0.0));
}

}  // namespace chebcap
