#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "chebcap/cinterval.hpp"
#include "chebcap/seqspace.hpp"

namespace chebcap {

// Dense interval matrix, column-major. Row/column r corresponds to sequence index r.
struct IMat {
  int rows = 0;
  int cols = 0;
  std::vector<Interval> data;

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * static_cast<size_t>(c), Interval(0.0)) {}

  Interval& operator()(int i, int j) { return data[static_cast<size_t>(j) * static_cast<size_t>(rows) + static_cast<size_t>(i)]; }
  const Interval& operator()(int i, int j) const {
    return data[static_cast<size_t>(j) * static_cast<size_t>(rows) + static_cast<size_t>(i)];
  }
  CoeffSeq column(int j, double nu = 1.0, Parity p = Parity::none) const;
  void set_column(int j, const CoeffSeq& v);

  static IMat identity(int n);
  static IMat from_point(const Eigen::MatrixXd& m);
  Eigen::MatrixXd mid() const;
  // Zero-padded or truncated copy.
  IMat resized(int r, int c) const;
  // Copy with rows outside [r0, r1] and columns outside [c0, c1] set to zero.
  IMat masked(int r0, int r1, int c0, int c1) const;
};

IMat operator+(const IMat& a, const IMat& b);
IMat operator-(const IMat& a, const IMat& b);
IMat operator*(const Interval& s, const IMat& a);

// Interval matrix product. The parallel kernel splits output columns across threads; the
// serial kernel is the reference implementation and produces bit-identical results.
IMat imat_mul(const IMat& a, const IMat& b);
IMat imat_mul_serial(const IMat& a, const IMat& b);
// A·v for a sequence (indices beyond a.cols are ignored, so v must fit).
CoeffSeq imat_apply(const IMat& a, const CoeffSeq& v);

// Weighted ℓ¹_ν norm of column j and the induced operator norm (finite block only).
Interval column_norm(const IMat& a, int j, double nu);
Interval imat_opnorm(const IMat& a, double nu);

// Complex interval matrix stored as a real pair.
struct CIMat {
  IMat re;
  IMat im;

  CIMat() = default;
  CIMat(int r, int c) : re(r, c), im(r, c) {}
  explicit CIMat(const IMat& real) : re(real), im(real.rows, real.cols) {}

  int rows() const { return re.rows; }
  int cols() const { return re.cols; }
  CInterval at(int i, int j) const { return {re(i, j), im(i, j)}; }
  void set(int i, int j, const CInterval& z) {
    re(i, j) = z.re;
    im(i, j) = z.im;
  }
  static CIMat from_point(const Eigen::MatrixXcd& m);
  Eigen::MatrixXcd mid() const;
  static CIMat identity(int n) { return CIMat(IMat::identity(n)); }
};

CIMat operator+(const CIMat& a, const CIMat& b);
CIMat operator-(const CIMat& a, const CIMat& b);
CIMat cimat_mul(const CIMat& a, const CIMat& b);
CIMat cimat_mul_serial(const CIMat& a, const CIMat& b);
CIMat cimat_mul(const CIMat& a, const IMat& b);
CIMat cimat_mul(const IMat& a, const CIMat& b);

// ν = 1 weighted norms of complex matrices (stability runs only use ν = 1).
Interval column_norm(const CIMat& a, int j);
Interval cimat_opnorm(const CIMat& a);
// Weighted ℓ¹ norm of a complex column vector stored as a one-column matrix.
Interval cvec_norm(const CIMat& v, int j);

// Worker count for parallel kernels: CHEBCAP_THREADS if set, otherwise the runtime default.
int worker_threads();

}  // namespace chebcap
