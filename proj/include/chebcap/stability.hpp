#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chebcap/dense.hpp"
#include "chebcap/validate.hpp"

namespace chebcap {

enum class DiskKind { gershgorin_finite, gershgorin_tail, generalized };
enum class StabilityMethod { gershgorin, generalized };

const char* disk_kind_name(DiskKind k);
const char* method_name(StabilityMethod m);

// Closed disk B_radius(center). Inactive disks belong to parity-forbidden indices and are skipped.
struct DiskEnclosure {
  CInterval center;
  Interval radius;
  int index = 0;
  DiskKind kind = DiskKind::gershgorin_finite;
  bool active = true;
};

// Upper bounds on the extent of a disk, valid for every center in the enclosure.
double disk_re_max(const DiskEnclosure& d);
double disk_re_min(const DiskEnclosure& d);
double disk_abs_max(const DiskEnclosure& d);
double disk_abs_min(const DiskEnclosure& d);
bool disks_disjoint(const DiskEnclosure& a, const DiskEnclosure& b);
// {z⁻¹ : z ∈ d}; requires 0 ∉ d.
DiskEnclosure invert_disk(const DiskEnclosure& d);

struct StabilityCertificate {
  StabilityMethod method = StabilityMethod::gershgorin;
  std::vector<DiskEnclosure> disks;
  Interval lambda_max;
  Interval mu;
  int n_unstable = -1;
  std::vector<DiskEnclosure> unstable_enclosures;  // eigenvalue enclosures λ of the original problem
  std::vector<int> unstable_indices;
  // Gershgorin: sup(|c| + R) over the non-unstable disks (tail included); bounds |1/λ| for stable λ.
  Interval rho_stable;
  // Gershgorin: min(Re c − R) over the non-unstable disks (tail included).
  Interval min_re_stable;
  // Generalized: max(Re c + R) over the non-unstable disks meeting B_{λmax}(0).
  Interval max_re_stable;
  Interval stable_bound;   // Λ_s when established
  bool stable_bound_ok = false;
  std::map<std::string, Interval> quantities;  // θ, ‖P⁻¹‖, β's, δ, ... as used
  std::vector<double> delta_history;
  bool success = false;
  std::string status;
  int offending = -1;
};

// Approximate diagonalization of A₀π^{≤N}ℒ⁻¹π^{≤N} on the parity-active indices.
struct PseudoDiag {
  int N = 0;
  std::vector<int> active;
  Eigen::VectorXcd mu;   // approximate eigenvalues, indexed like the columns of P0
  CIMat P0;              // columns are eigenvectors (identity on inactive indices)
  CIMat R;               // floating-point inverse of P0
  Interval P_norm;       // ‖𝒫‖ = max(‖P0‖, 1)
  Interval P0_norm;
  Interval R_norm;
  Interval theta;        // ‖P0⁻¹X‖ ≤ ‖RX‖ + θ‖X‖
  Interval Pinv_norm;    // ‖𝒫⁻¹‖ = max(‖R‖ + θ, 1)
  Interval P0inv_norm;   // ‖R‖ + θ
  double scale = 1.0;    // common factor applied to the eigenvectors
};

// L is 𝒦₀ restricted to columns 0..N (any number of rows); only rows ≤ N are used. With balance,
// the eigenvectors are scaled by a power of two so that ‖P0⁻¹‖ is close to 1; M̄ is unchanged.
PseudoDiag pseudo_diagonalize(const IMat& A0, const IMat& L, Parity parity, bool balance = false);

// M̄ columns n ≤ N: R·A₀·π^{≤N}ℒ⁻¹·P0.
CIMat build_Mbar(const IMat& A0, const IMat& L, const PseudoDiag& pd);

// Quantities shared by the finite and tail Gershgorin disks.
struct GershgorinData {
  int N = 0;
  int m = 1;
  PseudoDiag pd;
  CIMat Mbar;
  std::vector<Interval> eps;     // ε_n for n ≤ N
  Interval contraction;          // 1 − (Z₁ + Z₂r)
  Interval Z2r;
  std::vector<Interval> AV_norm;       // ‖𝒜V̄_i‖
  std::vector<Interval> AVK_low_norm;  // ‖𝒜V̄_i𝒦_iπ^{≤2m−1}‖
  std::vector<KOperator> K;
};

GershgorinData gershgorin_prepare(const Problem& p, const ExistenceRun& run);
DiskEnclosure gershgorin_finite(const GershgorinData& g, int n);
// Disk B_{r̄∞_n + ε∞_n}(0) containing the n-th Gershgorin disk, n > N.
DiskEnclosure gershgorin_tail(const GershgorinData& g, int n);

// Classifies the disks; disks with kind gershgorin_tail are balls around 0 covering every n > N.
StabilityCertificate count_unstable_gershgorin(const std::vector<DiskEnclosure>& disks, const Interval& lambda_max);

// λ-independent part of the generalized enclosure.
struct GeneralizedData {
  int N = 0;
  int m = 1;
  PseudoDiag pd;
  Eigen::VectorXcd S0;   // diagonal used for the splitting M0 = S0 + R0
  std::map<std::string, Interval> q;  // β_{i,j}, Z_{1,P0}, Z_{2,P0}r, ‖R0‖, ...
  Interval eps_base;     // ε without the λmax γ_{2m,N+1} term
  Interval gamma_2m;     // γ_{2m,N+1}
};

GeneralizedData generalized_prepare(const Problem& p, const ExistenceRun& run);

struct GeneralizedDisks {
  Interval epsilon;
  Interval delta;
  Interval beta0, beta1, beta2;
  std::vector<DiskEnclosure> disks;  // in the λ plane, index j
  bool ok = false;
  std::string status;
};

// ε, β₀, β₁, β₂ and δ from the stored quantities; no disks are built.
GeneralizedDisks generalized_delta(const std::map<std::string, Interval>& q, const Interval& eps_base,
                                   const Interval& gamma_2m, const Interval& lambda_max);
GeneralizedDisks generalized_disks(const GeneralizedData& g, const Interval& lambda_max);
StabilityCertificate count_unstable_generalized(const GeneralizedDisks& gd, const Interval& lambda_max);

// Runs the generalized method and refines λmax from the unstable group; the returned certificate
// carries the δ of every pass.
StabilityCertificate generalized_with_refinement(const GeneralizedData& g, const Interval& lambda_max, int passes = 2);

}  // namespace chebcap
