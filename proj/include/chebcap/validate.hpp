#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chebcap/dense.hpp"
#include "chebcap/linsolve.hpp"

namespace chebcap {

// coef · ∏_i (∂_x^i v)^{exps[i]}
struct Monomial {
  Interval coef;
  std::vector<int> exps;  // length 2m
  int degree() const;
};

// coef · ∂_x^i v
struct LinearTerm {
  Interval coef;
  int i = 0;
};

enum class SharpBounds { none, dirichlet, neumann_odd_fourth };

struct ProblemSpec {
  std::string id;
  int m = 1;
  BoundarySpec boundary;
  Parity parity = Parity::none;
  std::vector<Monomial> monomials;
  std::vector<LinearTerm> linear;
  CoeffSeq psi;
  Interval alpha;
  int N = 30;
  double nu = 1.0;
  SharpBounds sharp = SharpBounds::none;

  void validate() const;
  // Highest derivative order appearing in the nonlinearity or the linear terms.
  std::vector<bool> used_orders() const;
};

// A problem with its solution operators built.
struct Problem {
  ProblemSpec spec;
  std::vector<KOperator> K;  // 𝒦_0..𝒦_{2m-1}
  KsNormBounds ks;           // populated for the fourth-order Neumann problem
};

Problem build_problem(const ProblemSpec& spec);

// 𝒦(U) = Σ monomials + Σ linear terms; F(U) = U + 𝒦(U) + Ψ.
CoeffSeq eval_K(const CoeffSeq& U, const Problem& p);
CoeffSeq eval_F(const CoeffSeq& U, const Problem& p);

// T(V): matrix of W ↦ V ∗ W on rows 0..rows-1, columns 0..cols-1.
IMat conv_matrix(const CoeffSeq& V, int rows, int cols);

struct DFData {
  int N = 0;
  std::vector<CoeffSeq> V;  // multipliers V̄_i (empty when 𝒦_i is unused)
  std::vector<IMat> Kmat;   // 𝒦_i on columns 0..N
  IMat DFext;               // DF(Ū) on columns 0..N, all nonzero rows
  IMat DFN() const { return DFext.resized(N + 1, N + 1); }
};

// V̄_i = ∂𝒦/∂(𝒦_i U) at Ū, including constant multipliers from the linear terms.
std::vector<CoeffSeq> eval_multipliers(const CoeffSeq& Ubar, const Problem& p);
DFData eval_DF(const CoeffSeq& Ubar, const Problem& p, int N);

struct Z1Parts {
  Interval Z10, Z11, Z12, Z13, Z1;
};

struct ExistenceCertificate {
  std::string problem;
  Interval alpha;
  int N = 0;
  double nu = 1.0;
  Parity parity = Parity::none;
  CoeffSeq Ubar;
  Interval Y, Z1, Z2, r;
  Z1Parts parts;
  Interval Z2raw;   // Σ 2|c|‖𝒦_a‖‖𝒦_b‖ before the ‖𝒜‖ factor
  Interval A_norm;  // max(‖𝒜₀‖, 1)
  std::vector<Interval> K_norms;
  std::vector<Interval> eta_next;  // η_{i,N+1}
  std::vector<Interval> head_next; // head bound at N+1
  bool success = false;
  std::string status;
};

Interval bound_Y(const CoeffSeq& Ubar, const IMat& A0, const Problem& p, int N);
Z1Parts bound_Z1(const DFData& df, const IMat& A0, const Problem& p);
// Returns Z2raw; the certified Z2 is max(‖𝒜₀‖, 1)·Z2raw.
Interval bound_Z2raw(const Problem& p, int N);

struct RadiiResult {
  bool ok = false;
  Interval r;
  std::string reason;
};

RadiiResult radii_check(const Interval& Y, const Interval& Z1, const Interval& Z2);
// Both radii inequalities at r, in interval arithmetic.
bool radii_hold(const Interval& Y, const Interval& Z1, const Interval& Z2, const Interval& r);

struct ExistenceRun {
  ExistenceCertificate cert;
  DFData df;
  IMat A0;
};

// A0 empty ⇒ computed as the floating-point inverse of mid(DF^{≤N}).
ExistenceRun prove_existence(const Problem& p, const CoeffSeq& Ubar, const IMat& A0 = IMat());

// Floating-point model of π^{≤N}F for Newton iterations.
struct PointModel {
  int N = 0;
  int m = 1;
  std::vector<Eigen::MatrixXd> Kmat;
  std::vector<bool> used;
  std::vector<double> mono_coef;
  std::vector<std::vector<int>> mono_exps;
  std::vector<double> lin_coef;
  std::vector<int> lin_i;
  Eigen::VectorXd psi;

  Eigen::VectorXd residual(const Eigen::VectorXd& U) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& U) const;
};

std::vector<Eigen::MatrixXd> point_kmats(const Problem& p, int N);
PointModel make_point_model(const ProblemSpec& spec, const std::vector<Eigen::MatrixXd>& kmats, int N);

}  // namespace chebcap
