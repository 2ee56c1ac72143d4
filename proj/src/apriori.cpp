#include "chebcap/apriori.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chebcap {

Interval pi_interval() { return Interval(3.141592653589793, 3.1415926535897936); }

namespace {

const Interval kOne(1.0);

Interval g_poly(const Interval& t, const Interval& al, const Interval& a, const Interval& b) {
  return -ipow(t, 4) + al * sqr(t) + al * a * t + al * b;
}

Interval g_prime(const Interval& t, const Interval& al, const Interval& a) {
  return Interval(-4.0) * ipow(t, 3) + Interval(2.0) * al * t + al * a;
}

// Bisection on a function that is positive at lo and negative at hi, in floating point.
template <class F>
double bisect(F f, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double m = 0.5 * (lo + hi);
    (f(m) > 0 ? lo : hi) = m;
  }
  return hi;
}

// ‖𝒦_i Ũ‖₁ ≤ ‖𝒦_i Ū‖₁ + ‖𝒦_i‖ r; dominates the sup norm of ∂ₓ^i ṽ.
Interval sup_bound(const Problem& p, const ExistenceCertificate& c, int i) {
  const KOperator& K = p.K[static_cast<size_t>(i)];
  CoeffSeq u = c.Ubar;
  u.nu = 1.0;
  CoeffSeq ku = K.apply(u);
  ku.nu = 1.0;
  return norm_ell1nu(ku) + K.norm(c.N) * c.r;
}

}  // namespace

EnergyBound ks_energy_bound(const Interval& alpha, const Interval& a, const Interval& b, double mu) {
  if (mu < 0) throw std::invalid_argument("ks_energy_bound: mu must be nonnegative");
  const Interval al = abs(alpha);
  const double alh = al.hi, ah = a.hi, bh = b.hi;
  auto gp = [&](double t) { return -4 * t * t * t + 2 * alh * t + alh * ah; };
  // g' is concave on t ≥ 0 with g'(0) ≥ 0, so it has one positive root t*; g increases before it.
  double hi = 1.0;
  while (gp(hi) > 0) hi *= 2;
  const double ts = bisect(gp, 0.0, hi);
  double lo_t = ts * (1 - 1e-9), hi_t = ts * (1 + 1e-9) + 1e-300;
  while (g_prime(Interval(lo_t), al, a).lo < 0 && lo_t > 0) lo_t *= 0.5;
  if (g_prime(Interval(lo_t), al, a).lo < 0) lo_t = 0.0;
  while (g_prime(Interval(hi_t), al, a).hi > 0) hi_t *= 1.0 + 1e-6;
  EnergyBound e;
  if (!(g_prime(Interval(lo_t), al, a).lo >= 0)) throw std::runtime_error("ks_energy_bound: bracketing failed");
  e.re_bound = Interval(g_poly(Interval(lo_t, hi_t), al, a, b).hi);
  // Largest root of g + μ lies beyond t*; g is decreasing there.
  auto gm = [&](double t) { return -t * t * t * t + alh * t * t + alh * ah * t + alh * bh + mu; };
  double up = std::max(hi_t, 1.0);
  while (gm(up) > 0) up *= 2;
  double tm = bisect(gm, hi_t, up);
  while ((g_poly(Interval(tm), al, a, b) + Interval(mu)).hi >= 0) tm *= 1.0 + 1e-9;
  e.t_max = Interval(tm);
  e.im_bound = al * a * e.t_max;
  return e;
}

LemmaBound ks_lemma_bound(const Interval& alpha, const Interval& a, const Interval& b, double mu) {
  const Interval al = abs(alpha);
  const Interval pi = pi_interval();
  const Interval mu_i(mu);
  LemmaBound L;
  auto re_at = [&](const Interval& k) {
    return al * (b + a / (Interval(2.0) * pi * k) + kOne / (Interval(4.0) * k));
  };
  auto constraint = [&](const Interval& k) { return kOne - al * k - Interval(2.0) * al * k * a / pi; };
  // Real part: κ₁ = κ₂ = (2α(1/2 + ‖ṽ‖/π))⁻¹, which makes the constraint vanish.
  L.kappa_re = kOne / (Interval(2.0) * al * (Interval(0.5) + a / pi));
  if (constraint(L.kappa_re).hi < 0) throw std::domain_error("ks_lemma_bound: kappa constraint infeasible");
  L.re_bound = re_at(L.kappa_re);
  // Imaginary part: κ₁ = κ₂ = 2 / (c + sqrt(c² + 16(μ + α‖∂ₓṽ‖))), c = α(2 + 4‖ṽ‖/π).
  const Interval cc = al * (Interval(2.0) + Interval(4.0) * a / pi);
  L.kappa_im = Interval(2.0) / (cc + sqrt(sqr(cc) + Interval(16.0) * (mu_i + al * b)));
  const Interval den = constraint(L.kappa_im);
  if (!(den.lo > 0)) throw std::domain_error("ks_lemma_bound: kappa constraint infeasible");
  L.im_bound = al * (kOne + Interval(2.0) * a / pi) * sqrt((mu_i + re_at(L.kappa_im)) / den);
  L.lambda_max = sqrt(sqr(L.re_bound) + sqr(L.im_bound));
  return L;
}

AprioriBound apriori_lambda_max(const Problem& p, const ExistenceCertificate& c, double mu) {
  if (!c.success) throw std::invalid_argument("apriori_lambda_max: existence certificate not successful");
  AprioriBound ab;
  ab.problem = p.spec.id;
  ab.mu = Interval(mu);
  const Interval al = abs(p.spec.alpha);
  if (p.spec.id == "toy") {
    // v'' + 2αṽh = λh is self-adjoint and λ ≤ 2 sup(αṽ) by the Rayleigh quotient.
    ab.self_adjoint = true;
    ab.v_sup = sup_bound(p, c, 0);
    ab.lambda_max = Interval((Interval(2.0) * al * ab.v_sup).hi);
    ab.source = "rayleigh";
    return ab;
  }
  if (p.spec.id == "ks") {
    ab.v_sup = sup_bound(p, c, 0);
    ab.dv_sup = sup_bound(p, c, 1);
    const EnergyBound e0 = ks_energy_bound(p.spec.alpha, ab.v_sup, ab.dv_sup, 0.0);
    const EnergyBound em = ks_energy_bound(p.spec.alpha, ab.v_sup, ab.dv_sup, mu);
    ab.energy_lambda_max = Interval(sqrt(sqr(e0.re_bound) + sqr(e0.im_bound)).hi);
    ab.im_bound_mu = em.im_bound;
    try {
      const LemmaBound L = ks_lemma_bound(p.spec.alpha, ab.v_sup, ab.dv_sup, mu);
      ab.lemma_lambda_max = Interval(L.lambda_max.hi);
      ab.im_bound_mu = Interval(std::min(ab.im_bound_mu.hi, L.im_bound.hi));
    } catch (const std::domain_error&) {
      ab.lemma_lambda_max = Interval::whole();
    }
    const bool lemma_wins = ab.lemma_lambda_max.hi < ab.energy_lambda_max.hi;
    ab.lambda_max = lemma_wins ? ab.lemma_lambda_max : ab.energy_lambda_max;
    ab.source = lemma_wins ? "lemma" : "energy";
    return ab;
  }
  throw std::invalid_argument("apriori_lambda_max: no a priori bound for problem '" + p.spec.id + "'");
}

void assign_stable_bound(StabilityCertificate& sc, const AprioriBound& ab) {
  sc.mu = ab.mu;
  sc.stable_bound_ok = false;
  if (!sc.success) return;
  if (sc.method == StabilityMethod::gershgorin) {
    if (ab.self_adjoint) {
      // Stable λ = 1/μ with μ ∈ [c − R, 0) for some non-unstable disk.
      if (sc.min_re_stable.hi < 0) {
        sc.stable_bound = Interval((kOne / sc.min_re_stable).hi);
        sc.stable_bound_ok = true;
      }
      return;
    }
    // Stable λ with Re λ ≥ −μ: |λ| ≥ 1/ρ and |Im λ| ≤ ImB(μ).
    if (!(sc.rho_stable.hi > 0)) return;
    const Interval s2 = sqr(kOne / sc.rho_stable) - sqr(ab.im_bound_mu);
    if (!(s2.lo > 0)) return;
    sc.stable_bound = Interval(-std::min(ab.mu.lo, sqrt(s2).lo));
    sc.stable_bound_ok = true;
    return;
  }
  // Generalized: stable λ with |λ| ≤ λmax lie in the stable disks; beyond λmax, |Im λ| ≤ ImB(μ).
  const auto it_l = sc.quantities.find("lambda_max_pass1");
  const auto it_r = sc.quantities.find("max_re_stable_pass1");
  if (it_l == sc.quantities.end() || it_r == sc.quantities.end()) return;
  const Interval s2 = sqr(it_l->second) - sqr(ab.im_bound_mu);
  if (!(s2.lo > 0)) return;
  const double bound = std::max({-ab.mu.lo, it_r->second.hi, -sqrt(s2).lo});
  if (!(bound < 0)) return;
  sc.stable_bound = Interval(bound);
  sc.stable_bound_ok = true;
}

}  // namespace chebcap
