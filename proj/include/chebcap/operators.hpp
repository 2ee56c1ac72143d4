#pragma once

#include <string>
#include <vector>

#include "chebcap/seqspace.hpp"

namespace chebcap {

// 𝒟_k: Chebyshev coefficients to G^{(k)} coefficients of the k-th derivative.
CoeffSeq apply_Dk(const CoeffSeq& U, int k);
// Σ^power: indices moved up by power.
CoeffSeq apply_shift(const CoeffSeq& U, int power);
// 𝒟_k†: inverse of Σ^k𝒟_k on its range.
CoeffSeq apply_Ddag(const CoeffSeq& U, int k);
// 𝒞_{k,l}: re-expansion from G^{(k)} to G^{(l)}, k ≤ l.
CoeffSeq change_basis(const CoeffSeq& U, int from, int to);
// Antiderivative vanishing at -1 (finite supports only).
CoeffSeq apply_S(const CoeffSeq& U);
// 𝒮^{(i)} = π^{>i-1}𝒮^i, evaluated as 𝒟_i†Σ^i𝒞_{0,i}.
CoeffSeq apply_Si(const CoeffSeq& U, int i);

enum class BandKind { derivative, shift, dagger, change, antideriv, antideriv_i };

// Descriptor of an exactly applicable banded map.
struct BandedOp {
  BandKind kind;
  int k = 0;  // order (derivative/dagger/shift power/antiderivative count/change source)
  int l = 0;  // change-of-basis target order
  // Maximum |out index - in index| over nonzero entries, after the natural shift.
  int bandwidth() const;
  CoeffSeq apply(const CoeffSeq& U) const;
};

// α_{j,n}: ∂^j T_{n+j}(1) for j ≥ 1 (and 1 for j = 0), memoized.
Interval alpha_coeff(int j, int n);
// ∂_x^j 𝒢_0(U)(endpoint), endpoint ∈ {-1, +1}.
Interval boundary_eval(const CoeffSeq& U, int j, int endpoint);

// Σ_j left[i][j] ∂^j v(-1) = 0 and Σ_j right[i][j] ∂^j v(1) = 0 for i = 0..m-1.
struct BoundarySpec {
  int m = 1;
  std::vector<std::vector<double>> left;
  std::vector<std::vector<double>> right;

  static BoundarySpec dirichlet();
  // v'(1) = v'''(1) = 0 (mirrored at -1 by odd symmetry).
  static BoundarySpec neumann_odd_biharmonic();
  // v'(1) = 0 (second order, odd symmetry).
  static BoundarySpec neumann_odd_laplacian();
  void validate() const;
};

struct BoundaryRow {
  int endpoint;                 // -1 or +1
  std::vector<double> weights;  // over derivative orders 0..2m-1
};

// The nontrivial rows of ℬ. Without a parity restriction all 2m rows are used; with a
// parity restriction the left conditions follow from symmetry and only the m right rows are
// kept (the parity-restricted problem then has m free low-order coefficients).
struct BoundaryFunctionals {
  int m = 1;
  Parity parity = Parity::none;
  std::vector<BoundaryRow> rows;

  int count() const { return static_cast<int>(rows.size()); }
  Interval apply_row(int r, const CoeffSeq& U) const;
  std::vector<Interval> apply(const CoeffSeq& U) const;
};

BoundaryFunctionals build_B(const BoundarySpec& spec, Parity parity = Parity::none);

}  // namespace chebcap
