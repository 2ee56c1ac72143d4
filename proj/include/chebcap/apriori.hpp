#pragma once

#include <string>

#include "chebcap/stability.hpp"
#include "chebcap/validate.hpp"

namespace chebcap {

// Enclosure of π.
Interval pi_interval();

// Energy estimate for the fourth-order odd Neumann problem, with a ≥ ‖ṽ‖∞, b ≥ ‖∂ₓṽ‖∞:
// Re λ ≤ g(t) = −t⁴ + |α|t² + |α|a t + |α|b and |Im λ| ≤ |α| a t, where t⁴ = ‖h''‖² / ‖h‖².
struct EnergyBound {
  Interval re_bound;  // max_{t ≥ 0} g(t)
  Interval t_max;     // largest t with g(t) ≥ −μ
  Interval im_bound;  // |α| a t_max
};
EnergyBound ks_energy_bound(const Interval& alpha, const Interval& a, const Interval& b, double mu);

// Lemma-type bound with κ₁ = κ₂ chosen separately for the real and imaginary parts.
struct LemmaBound {
  Interval re_bound;
  Interval im_bound;   // valid for eigenvalues with Re λ ≥ −μ
  Interval lambda_max; // sqrt(re² + im²)
  Interval kappa_re, kappa_im;
};
// Throws std::domain_error when the κ constraint is infeasible.
LemmaBound ks_lemma_bound(const Interval& alpha, const Interval& a, const Interval& b, double mu);

struct AprioriBound {
  std::string problem;
  Interval mu;
  Interval lambda_max;     // |λ| ≤ λmax for every unstable λ
  bool self_adjoint = false;
  Interval v_sup;          // ≥ ‖ṽ‖∞
  Interval dv_sup;         // ≥ ‖∂ₓṽ‖∞ (KS only)
  Interval lemma_lambda_max;
  Interval energy_lambda_max;
  Interval im_bound_mu;    // |Im λ| bound for Re λ ≥ −μ (KS only)
  std::string source;      // which estimate gave λmax
};

// Toy: λ ≤ 2|α| sup|ṽ|, the problem being self-adjoint. KS: min of the lemma at μ and the energy estimate.
AprioriBound apriori_lambda_max(const Problem& p, const ExistenceCertificate& c, double mu);

// Λ_s: upper bound on Re λ over the stable eigenvalues; fills sc.stable_bound / stable_bound_ok.
void assign_stable_bound(StabilityCertificate& sc, const AprioriBound& ab);

}  // namespace chebcap
