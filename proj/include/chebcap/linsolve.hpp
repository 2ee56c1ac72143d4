#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chebcap/dense.hpp"
#include "chebcap/operators.hpp"

namespace chebcap {

struct IllPosedBoundary : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// γ^{(ν)}_{i,k}: bound on ‖𝒮^{(i)}E_k‖_ν, valid for k ≥ 2i.
Interval gamma_bound(int i, int k, double nu);
// ν^{-k}γ^{(1)}_{i-j,k}: bound on |B_{±1}(𝒮^{(i)}E_k, j)|, valid for i > j ≥ 0, k ≥ 2i.
Interval bc_tail_bound(int i, int j, int k, double nu);

// Enclosure of Q⁻¹ by interval Gauss–Jordan with greedy maximum-mignitude pivots.
// Throws IllPosedBoundary when no pivot excludes zero.
IMat interval_inverse(const IMat& q);

// 𝒦_i = 𝒢₀⁻¹∂_x^i𝒢₀ℒ⁻¹ for a 2m-th order problem (i = 0 gives ℒ⁻¹).
// Applied as w₀ + Σ_{c<2m-i} q_c e_c with w₀ = (-1)^{m+1}𝒮^{(2m-i)}U and the low-order
// coefficients fixed by the boundary rows.
struct KOperator {
  int m = 1;
  int i = 0;
  double nu = 1.0;
  Parity parity = Parity::none;  // parity of admissible inputs
  BoundaryFunctionals B;
  std::vector<int> p_idx;  // free coefficients of v below degree i
  std::vector<int> q_idx;  // free coefficients of ∂^i v below degree 2m-i
  IMat Qinv;               // unknowns [p; q] × boundary rows
  // Optional problem-specific bound on ‖𝒦_i E_k‖, used when smaller than the generic η.
  std::function<Interval(int)> sharp_eta;
  std::string sharp_tag;

  Parity range_parity() const { return parity_shift(parity, i); }
  // Output support grows by at most this many indices.
  int reach() const { return 2 * m - i; }

  CoeffSeq apply(const CoeffSeq& U) const;
  // 𝒦_i e_n with e_n the unnormalized unit sequence.
  CoeffSeq apply_unit(int n) const;
  // Columns n = 0..N (parity-forbidden columns zero); rows 0..N+reach().
  IMat matrix(int N) const;
  // Bound on the low-order correction Σ q_c e_c of 𝒦_i E_k, k > 4m.
  Interval head_bound(int k) const;
  Interval generic_eta(int k) const;
  // min(generic, sharp) bound on ‖𝒦_i E_k‖_ν, nonincreasing in k, k > 4m.
  Interval eta(int k) const;
  // max_{n ≤ N} ‖𝒦_i E_n‖_ν over admissible n.
  Interval column_sup(int N) const;
  // ‖𝒦_i‖_ν as max(column_sup(N), eta(N+1)).
  Interval norm(int N) const;
};

// Builds 𝒦_i and runs the construction self-checks on e_0..e_{check_N}.
KOperator build_Ki(const BoundarySpec& spec, int i, double nu, Parity parity = Parity::none, int check_N = 24);
KOperator build_Linv(const BoundarySpec& spec, double nu, Parity parity = Parity::none, int check_N = 24);

enum class SpecialInverse { dirichlet, neumann_odd };

// Closed-form inverses of the Dirichlet Laplacian and the odd Neumann Laplacian.
CoeffSeq special_inverse_apply(SpecialInverse kind, const CoeffSeq& U);

// Sharp column bound ‖ℒ₀⁻¹E_k‖_ν for the Dirichlet Laplacian, k ≥ 5.
Interval dirichlet_column_bound(int k, double nu);
// ‖ℒ₁⁻¹E_k‖₁ bound for the odd Neumann Laplacian, k ≥ 5.
Interval neumann_column_bound(int k);

struct KsNormBounds {
  int N = 200;
  Interval linv1_norm;   // ‖ℒ₁⁻¹‖₁ on odd sequences
  Interval s_norm;       // ‖𝒮‖ from odd to even sequences
  Interval k0_column;    // sup_k ‖ℒ₁⁻²E_k‖₁
  Interval k1_column;    // sup_k ‖∂ₓℒ₁⁻²E_k‖₁
};

// Certified constants for the fourth-order odd Neumann problem via finite block plus tail.
KsNormBounds ks_operator_norm_bounds(int N = 200);

// Installs the Dirichlet sharp bound on ℒ⁻¹ (m = 1, i = 0).
void attach_dirichlet_bounds(KOperator& linv);
// Installs the factorized sharp bounds on 𝒦₀, 𝒦₁, 𝒦₂ of the fourth-order odd Neumann problem.
void attach_ks_bounds(std::vector<KOperator>& k, const KsNormBounds& b);

}  // namespace chebcap
