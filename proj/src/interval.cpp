#include "chebcap/interval.hpp"

#include <cstdio>
#include <cstdlib>

namespace chebcap {

Interval iv_sqrt(const Interval& a) {
  if (a.is_whole()) return Interval::whole();
  if (a.lo < 0) throw std::domain_error("iv_sqrt: negative input");
  return detail::make(rnd::sqrt_dn(a.lo), rnd::sqrt_up(a.hi));
}

Interval ipow(const Interval& a, int n) {
  if (n < 0) throw std::invalid_argument("ipow: negative exponent");
  Interval r(1.0);
  Interval base = a;
  while (n > 0) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = (base.lo >= 0 || base.hi <= 0) ? base * base : sqr(base);
  }
  return r;
}

Interval gamma_ratio(int k, int n) {
  if (k < 1 || n < 0) throw std::invalid_argument("gamma_ratio: need k >= 1, n >= 0");
  Interval r(1.0);
  for (int m = 1; m <= n; ++m) r = r * Interval::frac(2.0 * k + m - 1, m);
  return r;
}

std::string to_hex(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

double from_hex(const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw std::invalid_argument("from_hex: malformed number '" + s + "'");
  return v;
}

}  // namespace chebcap
