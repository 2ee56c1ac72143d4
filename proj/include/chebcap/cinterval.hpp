#pragma once

#include <complex>

#include "chebcap/interval.hpp"

namespace chebcap {

// Rectangular complex interval stored as a real pair.
struct CInterval {
  Interval re;
  Interval im;

  CInterval() = default;
  CInterval(const Interval& r) : re(r), im(0.0) {}  // NOLINT
  CInterval(const Interval& r, const Interval& i) : re(r), im(i) {}
  CInterval(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT

  std::complex<double> mid() const { return {re.mid(), im.mid()}; }
  bool bounded() const { return re.bounded() && im.bounded(); }
};

inline CInterval operator+(const CInterval& a, const CInterval& b) { return {a.re + b.re, a.im + b.im}; }
inline CInterval operator-(const CInterval& a, const CInterval& b) { return {a.re - b.re, a.im - b.im}; }
inline CInterval operator-(const CInterval& a) { return {-a.re, -a.im}; }
inline CInterval operator*(const CInterval& a, const CInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CInterval operator*(const Interval& a, const CInterval& b) { return {a * b.re, a * b.im}; }
inline CInterval conj(const CInterval& a) { return {a.re, -a.im}; }
inline Interval norm_sq(const CInterval& a) { return sqr(a.re) + sqr(a.im); }
inline Interval cabs(const CInterval& a) { return sqrt(norm_sq(a)); }
// Upper bound of the modulus over the rectangle.
inline double cabs_up(const CInterval& a) { return cabs(a).hi; }
inline CInterval operator/(const CInterval& a, const CInterval& b) {
  Interval d = norm_sq(b);
  CInterval n = a * conj(b);
  return {n.re / d, n.im / d};
}
inline CInterval& operator+=(CInterval& a, const CInterval& b) { return a = a + b; }
inline CInterval& operator-=(CInterval& a, const CInterval& b) { return a = a - b; }

}  // namespace chebcap
