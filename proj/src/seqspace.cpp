#include "chebcap/seqspace.hpp"

#include <algorithm>
#include <stdexcept>

namespace chebcap {

const char* parity_name(Parity p) {
  switch (p) {
    case Parity::none: return "none";
    case Parity::odd: return "odd";
    case Parity::even: return "even";
  }
  return "none";
}

Parity parity_from_name(const std::string& s) {
  if (s == "none") return Parity::none;
  if (s == "odd") return Parity::odd;
  if (s == "even") return Parity::even;
  throw std::invalid_argument("unknown parity '" + s + "'");
}

Parity parity_product(Parity a, Parity b) {
  if (a == Parity::none || b == Parity::none) return Parity::none;
  return a == b ? Parity::even : Parity::odd;
}

Parity parity_shift(Parity p, int i) {
  if (p == Parity::none || i % 2 == 0) return p;
  return p == Parity::odd ? Parity::even : Parity::odd;
}

std::vector<int> active_indices(Parity p, int N) { return active_range(p, -1, N); }

std::vector<int> active_range(Parity p, int lo_exclusive, int hi_inclusive) {
  std::vector<int> r;
  for (int n = std::max(lo_exclusive + 1, 0); n <= hi_inclusive; ++n)
    if (parity_allows(p, n)) r.push_back(n);
  return r;
}

void CoeffSeq::trim() {
  while (!coeffs.empty() && coeffs.back().lo == 0 && coeffs.back().hi == 0) coeffs.pop_back();
}

bool CoeffSeq::parity_consistent() const {
  for (int n = 0; n < size(); ++n)
    if (!parity_allows(parity, n) && !(coeffs[static_cast<size_t>(n)].lo == 0 && coeffs[static_cast<size_t>(n)].hi == 0))
      return false;
  return true;
}

std::vector<double> CoeffSeq::midpoints() const {
  std::vector<double> r(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) r[i] = coeffs[i].mid();
  return r;
}

CoeffSeq CoeffSeq::from_points(const std::vector<double>& v, double nu, Parity p) {
  CoeffSeq s(static_cast<int>(v.size()), nu, p);
  for (size_t i = 0; i < v.size(); ++i) s.coeffs[i] = Interval(v[i]);
  return s;
}

static void check_compatible(const CoeffSeq& a, const CoeffSeq& b) {
  if (a.nu != b.nu) throw std::invalid_argument("CoeffSeq: mismatched nu");
  if (a.basis_order != b.basis_order) throw std::invalid_argument("CoeffSeq: mismatched basis order");
}

static Parity parity_sum(Parity a, Parity b) { return a == b ? a : Parity::none; }

CoeffSeq operator+(const CoeffSeq& a, const CoeffSeq& b) {
  check_compatible(a, b);
  CoeffSeq r(std::max(a.size(), b.size()), a.nu, parity_sum(a.parity, b.parity), a.basis_order);
  for (int n = 0; n < r.size(); ++n) r[n] = a.at(n) + b.at(n);
  return r;
}

CoeffSeq operator-(const CoeffSeq& a, const CoeffSeq& b) {
  check_compatible(a, b);
  CoeffSeq r(std::max(a.size(), b.size()), a.nu, parity_sum(a.parity, b.parity), a.basis_order);
  for (int n = 0; n < r.size(); ++n) r[n] = a.at(n) - b.at(n);
  return r;
}

CoeffSeq operator*(const Interval& s, const CoeffSeq& a) {
  CoeffSeq r = a;
  for (auto& c : r.coeffs) c = s * c;
  return r;
}

Interval nu_pow(double nu, int n) {
  if (nu == 1.0) return Interval(1.0);
  return ipow(Interval(nu), n);
}

Interval norm_ell1nu(const CoeffSeq& U) {
  if (U.size() == 0) return Interval(0.0);
  Interval s(0.0);
  if (U.nu == 1.0) {
    for (int n = 1; n < U.size(); ++n) s += abs(U[n]);
  } else {
    Interval w(1.0);
    Interval nu(U.nu);
    for (int n = 1; n < U.size(); ++n) {
      w = w * nu;
      s += abs(U[n]) * w;
    }
  }
  return abs(U[0]) + Interval(2.0) * s;
}

CoeffSeq conv(const CoeffSeq& U, const CoeffSeq& V) {
  if (U.basis_order != 0 || V.basis_order != 0) throw std::invalid_argument("conv: Chebyshev basis required");
  if (U.nu != V.nu) throw std::invalid_argument("conv: mismatched nu");
  Parity p = parity_product(U.parity, V.parity);
  if (U.size() == 0 || V.size() == 0) return CoeffSeq(0, U.nu, p);
  const int lu = U.last();
  const int lv = V.last();
  CoeffSeq W(lu + lv + 1, U.nu, p);
  // W_n = Σ_{p ∈ Z} U_|p| V_|n-p|, restricted to |p| ≤ lu and |n-p| ≤ lv.
  for (int n = 0; n <= lu + lv; ++n) {
    if (!parity_allows(p, n)) continue;
    Interval s(0.0);
    const int pmin = std::max(-lu, n - lv);
    const int pmax = std::min(lu, n + lv);
    for (int q = pmin; q <= pmax; ++q) {
      const int iu = q < 0 ? -q : q;
      const int d = n - q;
      const int iv = d < 0 ? -d : d;
      const Interval& a = U[iu];
      const Interval& b = V[iv];
      if ((a.lo == 0 && a.hi == 0) || (b.lo == 0 && b.hi == 0)) continue;
      s += a * b;
    }
    W[n] = s;
  }
  return W;
}

CoeffSeq project(const CoeffSeq& U, int N, Side side) {
  if (N < 0) throw std::invalid_argument("project: N must be nonnegative");
  CoeffSeq r = U;
  if (side == Side::leq) {
    if (r.size() > N + 1) r.coeffs.resize(static_cast<size_t>(N + 1));
  } else {
    for (int n = 0; n <= std::min(N, r.last()); ++n) r[n] = Interval(0.0);
  }
  return r;
}

CoeffSeq basis_Ek(int k, double nu) {
  if (k < 0 || nu < 1.0) throw std::invalid_argument("basis_Ek: need k >= 0, nu >= 1");
  CoeffSeq e(k + 1, nu, Parity::none);
  if (k == 0)
    e[0] = Interval(1.0);
  else
    e[k] = Interval(1.0) / (Interval(2.0) * nu_pow(nu, k));
  e.parity = (k % 2) ? Parity::odd : Parity::even;
  return e;
}

Interval evaluate_series(const CoeffSeq& U, const Interval& x) {
  if (x.lo < -1.0 || x.hi > 1.0) throw std::invalid_argument("evaluate_series: x outside [-1,1]");
  if (U.size() == 0) return Interval(0.0);
  const int k = U.basis_order;
  Interval sum = U[0];
  if (U.size() == 1) return sum;
  Interval gprev(1.0);
  Interval g = (k == 0) ? x : Interval(2.0 * k) * x;
  Interval tail = U[1] * g;
  for (int n = 1; n < U.last(); ++n) {
    Interval gnext;
    if (k == 0) {
      gnext = Interval(2.0) * x * g - gprev;
    } else {
      gnext = (Interval(2.0 * (n + k)) * x * g - Interval(n + 2.0 * k - 1) * gprev) / Interval(n + 1.0);
    }
    gprev = g;
    g = gnext;
    tail += U[n + 1] * g;
  }
  return sum + Interval(2.0) * tail;
}

Interval op_norm(const std::vector<Interval>& weighted_column_norms, const Interval& tail_bound) {
  double hi = tail_bound.hi;
  double lo = tail_bound.lo;
  for (const auto& c : weighted_column_norms) {
    hi = std::fmax(hi, c.hi);
    lo = std::fmax(lo, c.lo);
  }
  return Interval(lo, hi);
}

}  // namespace chebcap
