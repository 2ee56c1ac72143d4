#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace chebcap {

// Directed rounding by error-free transforms plus one-ulp stepping.
// The hardware rounding mode is never touched.
namespace rnd {

inline double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

// Below this magnitude fma residuals may be inexact; fall back to unconditional nudging.
inline constexpr double kTiny = 0x1p-960;

inline double add_dn(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return s;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return err < 0 ? down(s) : s;
}
inline double add_up(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return s;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return err > 0 ? up(s) : s;
}
inline double mul_dn(double a, double b) {
  if (a == 0 || b == 0) return 0.0;
  double p = a * b;
  if (!std::isfinite(p)) return p;
  if (std::fabs(p) < kTiny) return down(p);
  double e = std::fma(a, b, -p);
  return e < 0 ? down(p) : p;
}
inline double mul_up(double a, double b) {
  if (a == 0 || b == 0) return 0.0;
  double p = a * b;
  if (!std::isfinite(p)) return p;
  if (std::fabs(p) < kTiny) return up(p);
  double e = std::fma(a, b, -p);
  return e > 0 ? up(p) : p;
}
inline double div_dn(double a, double b) {
  if (a == 0) return 0.0;
  double q = a / b;
  if (!std::isfinite(q)) return q;
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return down(q);
  double r = std::fma(-q, b, a);  // a - q*b exactly
  bool below = (r < 0) != (b < 0);
  return (r != 0 && below) ? down(q) : q;
}
inline double div_up(double a, double b) {
  if (a == 0) return 0.0;
  double q = a / b;
  if (!std::isfinite(q)) return q;
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return up(q);
  double r = std::fma(-q, b, a);
  bool above = (r > 0) != (b < 0);
  return (r != 0 && above) ? up(q) : q;
}
inline double sqrt_dn(double a) {
  if (a <= 0) return 0.0;
  double s = std::sqrt(a);
  if (a < kTiny) return down(s);
  double r = std::fma(-s, s, a);
  return r < 0 ? down(s) : s;
}
inline double sqrt_up(double a) {
  if (a <= 0) return 0.0;
  double s = std::sqrt(a);
  if (a < kTiny) return up(s);
  double r = std::fma(-s, s, a);
  return r > 0 ? up(s) : s;
}

}  // namespace rnd

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  constexpr Interval(double x) : lo(x), hi(x) {}  // NOLINT: point intervals convert implicitly
  Interval(double l, double h) : lo(l), hi(h) {
    if (!(l <= h)) throw std::invalid_argument("Interval: lo > hi or NaN endpoint");
  }

  static Interval whole() {
    Interval r;
    r.lo = -std::numeric_limits<double>::infinity();
    r.hi = std::numeric_limits<double>::infinity();
    return r;
  }
  // Exact rational p/q enclosed (p, q must be exactly representable).
  static Interval frac(double p, double q) { return Interval(rnd::div_dn(p, q), rnd::div_up(p, q)); }

  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
  bool is_whole() const { return !bounded(); }
  bool is_point() const { return lo == hi; }
  double mid() const { return lo == hi ? lo : 0.5 * lo + 0.5 * hi; }
  double width_up() const { return rnd::add_up(hi, -lo); }
  double rad_up() const { return 0.5 * width_up(); }
  double mag() const { return std::fmax(std::fabs(lo), std::fabs(hi)); }
  double mig() const { return (lo <= 0 && hi >= 0) ? 0.0 : std::fmin(std::fabs(lo), std::fabs(hi)); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  bool subset_of(const Interval& o) const { return o.lo <= lo && hi <= o.hi; }
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

namespace detail {
inline Interval make(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || !std::isfinite(lo) || !std::isfinite(hi)) return Interval::whole();
  Interval r;
  r.lo = lo;
  r.hi = hi;
  return r;
}
}  // namespace detail

inline Interval operator-(const Interval& a) {
  Interval r;
  r.lo = -a.hi;
  r.hi = -a.lo;
  return r;
}
inline Interval operator+(const Interval& a, const Interval& b) {
  if (a.is_whole() || b.is_whole()) return Interval::whole();
  return detail::make(rnd::add_dn(a.lo, b.lo), rnd::add_up(a.hi, b.hi));
}
inline Interval operator-(const Interval& a, const Interval& b) {
  if (a.is_whole() || b.is_whole()) return Interval::whole();
  return detail::make(rnd::add_dn(a.lo, -b.hi), rnd::add_up(a.hi, -b.lo));
}
inline Interval operator*(const Interval& a, const Interval& b) {
  if (a.is_whole() || b.is_whole()) return Interval::whole();
  if (a.lo >= 0 && b.lo >= 0) return detail::make(rnd::mul_dn(a.lo, b.lo), rnd::mul_up(a.hi, b.hi));
  if (a.is_point() && b.is_point()) {
    return detail::make(rnd::mul_dn(a.lo, b.lo), rnd::mul_up(a.lo, b.lo));
  }
  double l = std::fmin(std::fmin(rnd::mul_dn(a.lo, b.lo), rnd::mul_dn(a.lo, b.hi)),
                       std::fmin(rnd::mul_dn(a.hi, b.lo), rnd::mul_dn(a.hi, b.hi)));
  double h = std::fmax(std::fmax(rnd::mul_up(a.lo, b.lo), rnd::mul_up(a.lo, b.hi)),
                       std::fmax(rnd::mul_up(a.hi, b.lo), rnd::mul_up(a.hi, b.hi)));
  return detail::make(l, h);
}
// Division by an interval containing zero returns the saturated whole line.
inline Interval operator/(const Interval& a, const Interval& b) {
  if (a.is_whole() || b.is_whole() || b.contains_zero()) return Interval::whole();
  double l = std::fmin(std::fmin(rnd::div_dn(a.lo, b.lo), rnd::div_dn(a.lo, b.hi)),
                       std::fmin(rnd::div_dn(a.hi, b.lo), rnd::div_dn(a.hi, b.hi)));
  double h = std::fmax(std::fmax(rnd::div_up(a.lo, b.lo), rnd::div_up(a.lo, b.hi)),
                       std::fmax(rnd::div_up(a.hi, b.lo), rnd::div_up(a.hi, b.hi)));
  return detail::make(l, h);
}
inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }
inline Interval& operator/=(Interval& a, const Interval& b) { return a = a / b; }

enum class ArithOp { add, sub, mul, div };

// Single entry point for the four operations; division by an interval containing zero
// yields the whole-line error value.
inline Interval iv_arith(const Interval& a, const Interval& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  return Interval::whole();
}

// Throws std::domain_error if any point of the input is negative.
Interval iv_sqrt(const Interval& a);
inline Interval sqrt(const Interval& a) { return iv_sqrt(a); }

inline Interval abs(const Interval& a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return -a;
  return detail::make(0.0, std::fmax(-a.lo, a.hi));
}
inline Interval sqr(const Interval& a) {
  Interval m = abs(a);
  return detail::make(rnd::mul_dn(m.lo, m.lo), rnd::mul_up(m.hi, m.hi));
}
inline Interval hull(const Interval& a, const Interval& b) {
  return detail::make(std::fmin(a.lo, b.lo), std::fmax(a.hi, b.hi));
}
inline Interval max(const Interval& a, const Interval& b) {
  return detail::make(std::fmax(a.lo, b.lo), std::fmax(a.hi, b.hi));
}
inline Interval min(const Interval& a, const Interval& b) {
  return detail::make(std::fmin(a.lo, b.lo), std::fmin(a.hi, b.hi));
}
// [0, x] for an upper bound x.
inline Interval upto(double x) { return detail::make(0.0, x); }
// Integer power by repeated outward multiplication.
Interval ipow(const Interval& a, int n);

// Rigorous enclosure of Γ(2k+n)/(Γ(2k) n!) as the product of the rationals (2k+m-1)/m.
Interval gamma_ratio(int k, int n);

// Bit-exact hexadecimal round trip.
std::string to_hex(double x);
double from_hex(const std::string& s);

}  // namespace chebcap
