#pragma once

#include <vector>

#include "chebcap/interval.hpp"

namespace chebcap {

enum class Parity { none, odd, even };

const char* parity_name(Parity p);
Parity parity_from_name(const std::string& s);
// Parity of the product of two functions with the given parities.
Parity parity_product(Parity a, Parity b);
// Parity after i derivatives (or antiderivatives).
Parity parity_shift(Parity p, int i);
// True when index n is allowed to be nonzero under parity p.
inline bool parity_allows(Parity p, int n) {
  return p == Parity::none || (p == Parity::odd ? (n % 2 == 1) : (n % 2 == 0));
}
// Indices 0..N allowed by parity p, ascending.
std::vector<int> active_indices(Parity p, int N);
// Allowed indices in (lo, hi].
std::vector<int> active_range(Parity p, int lo_exclusive, int hi_inclusive);

// ξ_n: 1 for n = 0, 2 otherwise.
inline int xi(int n) { return n == 0 ? 1 : 2; }

// Finitely supported coefficient sequence u = U_0 + 2 Σ U_n G_n^{(k)}.
struct CoeffSeq {
  std::vector<Interval> coeffs;
  int basis_order = 0;
  double nu = 1.0;
  Parity parity = Parity::none;

  CoeffSeq() = default;
  explicit CoeffSeq(int size, double nu_ = 1.0, Parity p = Parity::none, int order = 0)
      : coeffs(static_cast<size_t>(size), Interval(0.0)), basis_order(order), nu(nu_), parity(p) {}

  int size() const { return static_cast<int>(coeffs.size()); }
  // Highest stored index (-1 if empty).
  int last() const { return size() - 1; }
  Interval at(int n) const { return (n >= 0 && n < size()) ? coeffs[static_cast<size_t>(n)] : Interval(0.0); }
  Interval& operator[](int n) { return coeffs[static_cast<size_t>(n)]; }
  const Interval& operator[](int n) const { return coeffs[static_cast<size_t>(n)]; }
  void ensure(int size_needed) {
    if (size() < size_needed) coeffs.resize(static_cast<size_t>(size_needed), Interval(0.0));
  }
  // Drop trailing exact zeros.
  void trim();
  // True when coefficients at indices forbidden by the parity tag are exactly zero.
  bool parity_consistent() const;
  std::vector<double> midpoints() const;
  static CoeffSeq from_points(const std::vector<double>& v, double nu = 1.0, Parity p = Parity::none);
};

CoeffSeq operator+(const CoeffSeq& a, const CoeffSeq& b);
CoeffSeq operator-(const CoeffSeq& a, const CoeffSeq& b);
CoeffSeq operator*(const Interval& s, const CoeffSeq& a);

// ν^n enclosure.
Interval nu_pow(double nu, int n);

// |U_0| + 2 Σ |U_n| ν^n.
Interval norm_ell1nu(const CoeffSeq& U);
// Chebyshev convolution (product of the represented functions).
CoeffSeq conv(const CoeffSeq& U, const CoeffSeq& V);

enum class Side { leq, gt };
CoeffSeq project(const CoeffSeq& U, int N, Side side);

// Normalized basis vector E_k^{(ν)} with unit norm.
CoeffSeq basis_Ek(int k, double nu);

// Enclosure of 𝒢_k(U)(x) by the three-term Gegenbauer recurrence.
Interval evaluate_series(const CoeffSeq& U, const Interval& x);

// Operator norm from per-column norms ‖A E_n‖ of the finite block and a bound valid for
// every column beyond it.
Interval op_norm(const std::vector<Interval>& weighted_column_norms, const Interval& tail_bound);

}  // namespace chebcap
