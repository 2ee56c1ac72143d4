#include "chebcap/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "chebcap/numerics.hpp"

namespace chebcap {

const char* disk_kind_name(DiskKind k) {
  switch (k) {
    case DiskKind::gershgorin_finite: return "gershgorin_finite";
    case DiskKind::gershgorin_tail: return "gershgorin_tail";
    case DiskKind::generalized: return "generalized";
  }
  return "?";
}

const char* method_name(StabilityMethod m) { return m == StabilityMethod::gershgorin ? "gershgorin" : "generalized"; }

double disk_re_max(const DiskEnclosure& d) { return (d.center.re + d.radius).hi; }
double disk_re_min(const DiskEnclosure& d) { return (d.center.re - d.radius).lo; }
double disk_abs_max(const DiskEnclosure& d) { return (cabs(d.center) + d.radius).hi; }
double disk_abs_min(const DiskEnclosure& d) { return (cabs(d.center) - d.radius).lo; }

bool disks_disjoint(const DiskEnclosure& a, const DiskEnclosure& b) {
  return cabs(a.center - b.center).lo > (a.radius + b.radius).hi;
}

DiskEnclosure invert_disk(const DiskEnclosure& d) {
  // Replace the center rectangle by its midpoint and widen the radius to cover it.
  const std::complex<double> c = d.center.mid();
  const CInterval cc(c);
  const Interval spread = cabs(d.center - cc);
  const Interval rho = d.radius + Interval(spread.hi);
  const Interval den = norm_sq(cc) - sqr(rho);
  if (!(den.lo > 0)) throw std::domain_error("invert_disk: disk contains 0");
  DiskEnclosure r = d;
  r.center = CInterval(cc.re / den, -(cc.im / den));
  r.radius = Interval((rho / den).hi);
  return r;
}

namespace {

const Interval kOne(1.0);

CIMat cresized(const CIMat& a, int r, int c) {
  CIMat m;
  m.re = a.re.resized(r, c);
  m.im = a.im.resized(r, c);
  return m;
}

CIMat cmasked(const CIMat& a, int r0, int r1, int c0, int c1) {
  CIMat m;
  m.re = a.re.masked(r0, r1, c0, c1);
  m.im = a.im.masked(r0, r1, c0, c1);
  return m;
}

// ‖P0⁻¹X‖ ≤ ‖R X‖ + θ‖X‖.
Interval pinv_times_norm(const PseudoDiag& pd, const CIMat& X) {
  return cimat_opnorm(cimat_mul(pd.R, X)) + pd.theta * cimat_opnorm(X);
}

// Norm of 𝒜G for a finite block G, with 𝒜 = A₀ on rows ≤ N and the identity beyond.
Interval apply_A_norm(const IMat& A0, const IMat& G) {
  const int N = A0.rows - 1;
  const IMat lo = imat_mul(A0, G.resized(N + 1, G.cols));
  const IMat hi = G.rows > N + 1 ? G.masked(N + 1, G.rows - 1, 0, G.cols - 1) : IMat(1, G.cols);
  std::vector<Interval> cols(static_cast<size_t>(G.cols));
  for (int c = 0; c < G.cols; ++c) cols[static_cast<size_t>(c)] = column_norm(lo, c, 1.0) + column_norm(hi, c, 1.0);
  return op_norm(cols, Interval(0.0));
}

void require_stability_inputs(const Problem& p, const ExistenceRun& run) {
  if (!run.cert.success) throw std::invalid_argument("stability: existence certificate not successful");
  if (p.spec.nu != 1.0) throw std::invalid_argument("stability: requires nu = 1");
  if (run.A0.rows != p.spec.N + 1) throw std::invalid_argument("stability: A0 shape does not match N");
}

}  // namespace

PseudoDiag pseudo_diagonalize(const IMat& A0, const IMat& L, Parity parity, bool balance) {
  const int N = A0.rows - 1;
  PseudoDiag pd;
  pd.N = N;
  pd.active = active_indices(parity, N);
  const int na = static_cast<int>(pd.active.size());
  const Eigen::MatrixXd X = imat_mul(A0, L.resized(N + 1, N + 1)).mid();
  Eigen::MatrixXd sub(na, na);
  for (int c = 0; c < na; ++c)
    for (int r = 0; r < na; ++r) sub(r, c) = X(pd.active[static_cast<size_t>(r)], pd.active[static_cast<size_t>(c)]);
  const EigenDecomp ed = approx_eigen(sub, pd.active);

  Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(N + 1, N + 1);
  Eigen::MatrixXcd Pi = Eigen::MatrixXcd::Identity(N + 1, N + 1);
  pd.mu = Eigen::VectorXcd::Zero(N + 1);
  for (int c = 0; c < na; ++c) {
    const int jc = pd.active[static_cast<size_t>(c)];
    pd.mu(jc) = ed.mu(c);
    for (int r = 0; r < na; ++r) {
      const int ir = pd.active[static_cast<size_t>(r)];
      P(ir, jc) = ed.P(r, c);
      Pi(ir, jc) = ed.Pinv(r, c);
    }
  }
  if (balance) {
    double rn = 0.0;
    for (int c : pd.active) {
      double col = 0.0;
      for (int r : pd.active) col += std::abs(Pi(r, c)) * xi(r);
      rn = std::max(rn, col / xi(c));
    }
    // Power of two, so the rescaling is exact.
    pd.scale = rn > 1.0 ? std::ldexp(1.0, std::ilogb(rn)) : 1.0;
    for (int c : pd.active) {
      P.col(c) *= pd.scale;
      Pi.row(c) /= pd.scale;
    }
  }
  pd.P0 = CIMat::from_point(P);
  pd.R = CIMat::from_point(Pi);
  const CIMat E = CIMat::identity(N + 1) - cimat_mul(pd.R, pd.P0);
  const Interval e = cimat_opnorm(E);
  if (!(e.hi < 1.0)) throw std::runtime_error("pseudo_diagonalize: eigenvector matrix numerically singular");
  pd.R_norm = cimat_opnorm(pd.R);
  pd.P0_norm = cimat_opnorm(pd.P0);
  pd.theta = e * pd.R_norm / (kOne - e);
  pd.P0inv_norm = pd.R_norm + pd.theta;
  pd.P_norm = max(pd.P0_norm, kOne);
  pd.Pinv_norm = max(pd.P0inv_norm, kOne);
  return pd;
}

CIMat build_Mbar(const IMat& A0, const IMat& L, const PseudoDiag& pd) {
  const int N = pd.N;
  const IMat X = imat_mul(A0, L.resized(N + 1, N + 1));
  return cimat_mul(pd.R, cimat_mul(X, pd.P0));
}

GershgorinData gershgorin_prepare(const Problem& p, const ExistenceRun& run) {
  require_stability_inputs(p, run);
  const ExistenceCertificate& c = run.cert;
  GershgorinData g;
  g.N = c.N;
  g.m = p.spec.m;
  g.K = p.K;
  const int N = g.N;
  const IMat L = p.K[0].matrix(N);
  g.pd = pseudo_diagonalize(run.A0, L, p.spec.parity, true);
  g.Mbar = build_Mbar(run.A0, L, g.pd);
  g.Z2r = c.Z2 * c.r;
  g.contraction = kOne - (c.Z1 + g.Z2r);
  if (!(g.contraction.lo > 0)) throw std::runtime_error("gershgorin_prepare: 1 - (Z1 + Z2 r) <= 0");

  // Residual DF(Ū)𝒫M̄ − ℒ⁻¹𝒫 on the columns n ≤ N.
  const CIMat Z = cimat_mul(g.pd.P0, g.Mbar);
  const int rows = std::max(run.df.DFext.rows, L.rows);
  const CIMat res = cresized(cimat_mul(run.df.DFext, Z), rows, N + 1) - cimat_mul(L.resized(rows, N + 1), g.pd.P0);
  const CIMat a_lo = cimat_mul(run.A0, cresized(res, N + 1, N + 1));
  const CIMat r_hi = cmasked(res, N + 1, rows - 1, 0, N);
  g.eps.assign(static_cast<size_t>(N + 1), Interval(0.0));
  const Interval scale = g.pd.Pinv_norm / g.contraction;
#pragma omp parallel for schedule(static) num_threads(worker_threads())
  for (int n = 0; n <= N; ++n)
    g.eps[static_cast<size_t>(n)] =
        scale * (column_norm(a_lo, n) + column_norm(r_hi, n) + g.Z2r * column_norm(Z, n));

  const int nk = 2 * g.m;
  g.AV_norm.assign(static_cast<size_t>(nk), Interval(0.0));
  g.AVK_low_norm.assign(static_cast<size_t>(nk), Interval(0.0));
  for (int i = 0; i < nk; ++i) {
    const CoeffSeq& v = run.df.V[static_cast<size_t>(i)];
    if (v.size() == 0) continue;
    const IMat T = conv_matrix(v, N + 1, N + v.size() + 1);
    g.AV_norm[static_cast<size_t>(i)] = imat_opnorm(imat_mul(run.A0, T), 1.0) + norm_ell1nu(v);
    const IMat Kc = p.K[static_cast<size_t>(i)].matrix(2 * g.m - 1);
    const IMat G = imat_mul(conv_matrix(v, Kc.rows + v.size(), Kc.rows), Kc);
    g.AVK_low_norm[static_cast<size_t>(i)] = apply_A_norm(run.A0, G);
  }
  return g;
}

DiskEnclosure gershgorin_finite(const GershgorinData& g, int n) {
  if (n < 0 || n > g.N) throw std::out_of_range("gershgorin_finite: index outside 0..N");
  DiskEnclosure d;
  d.kind = DiskKind::gershgorin_finite;
  d.index = n;
  d.active = std::binary_search(g.pd.active.begin(), g.pd.active.end(), n);
  d.center = g.Mbar.at(n, n);
  Interval off(0.0);
  for (int k = 0; k <= g.N; ++k) {
    if (k == n) continue;
    const CInterval z = g.Mbar.at(k, n);
    if (z.re.lo == 0 && z.re.hi == 0 && z.im.lo == 0 && z.im.hi == 0) continue;
    off += cabs(z) * Interval(static_cast<double>(xi(k)));
  }
  d.radius = off / Interval(static_cast<double>(xi(n))) + g.eps[static_cast<size_t>(n)];
  return d;
}

DiskEnclosure gershgorin_tail(const GershgorinData& g, int n) {
  if (n <= g.N) throw std::out_of_range("gershgorin_tail: index must exceed N");
  const int m = g.m;
  if (n - 2 * m <= 4 * m) throw std::invalid_argument("gershgorin_tail: requires n - 2m > 4m");
  const KOperator& K0 = g.K[0];
  const Interval eta0 = K0.eta(n);
  Interval s = g.Z2r * eta0;
  const Interval gam = gamma_bound(2 * m, n, 1.0);
  // The boundary correction and 𝒮^{(2m)}E_n have disjoint supports, so η₀ also bounds the correction.
  const Interval head = min(K0.head_bound(n), eta0);
  for (int i = 0; i < 2 * m; ++i) {
    if (g.AV_norm[static_cast<size_t>(i)].hi == 0) continue;
    s += g.AV_norm[static_cast<size_t>(i)] * g.K[static_cast<size_t>(i)].eta(n - 2 * m) * gam +
         g.AVK_low_norm[static_cast<size_t>(i)] * head;
  }
  DiskEnclosure d;
  d.kind = DiskKind::gershgorin_tail;
  d.index = n;
  d.center = CInterval(Interval(0.0), Interval(0.0));
  d.radius = g.pd.Pinv_norm * eta0 + g.pd.Pinv_norm / g.contraction * s;
  return d;
}

StabilityCertificate count_unstable_gershgorin(const std::vector<DiskEnclosure>& disks, const Interval& lambda_max) {
  StabilityCertificate sc;
  sc.method = StabilityMethod::gershgorin;
  sc.disks = disks;
  sc.lambda_max = lambda_max;
  if (!(lambda_max.lo > 0)) {
    sc.status = "inconclusive: lambda_max must be positive";
    return sc;
  }
  const double inv = (kOne / lambda_max).lo;
  std::vector<int> unstable, others;
  for (int k = 0; k < static_cast<int>(disks.size()); ++k) {
    const DiskEnclosure& d = disks[static_cast<size_t>(k)];
    if (!d.active) continue;
    if (d.kind == DiskKind::gershgorin_tail) {
      if (!(disk_abs_max(d) < inv)) {
        sc.status = "inconclusive: tail disk not inside the 1/lambda_max ball";
        sc.offending = d.index;
        return sc;
      }
      others.push_back(k);
    } else if (disk_re_min(d) > 0) {
      unstable.push_back(k);
    } else if (disk_re_max(d) < 0 || disk_abs_max(d) < inv) {
      others.push_back(k);
    } else {
      sc.status = "inconclusive: disk straddles the classification regions";
      sc.offending = d.index;
      return sc;
    }
  }
  for (int u : unstable)
    for (int o : others)
      if (!disks_disjoint(disks[static_cast<size_t>(u)], disks[static_cast<size_t>(o)])) {
        sc.status = "inconclusive: unstable disk meets another disk";
        sc.offending = disks[static_cast<size_t>(u)].index;
        return sc;
      }
  double rho = 0.0, mre = 0.0;
  for (int o : others) {
    rho = std::fmax(rho, disk_abs_max(disks[static_cast<size_t>(o)]));
    mre = std::fmin(mre, disk_re_min(disks[static_cast<size_t>(o)]));
  }
  sc.rho_stable = Interval(rho);
  sc.min_re_stable = Interval(mre);
  for (int u : unstable) {
    sc.unstable_indices.push_back(disks[static_cast<size_t>(u)].index);
    sc.unstable_enclosures.push_back(invert_disk(disks[static_cast<size_t>(u)]));
  }
  sc.n_unstable = static_cast<int>(unstable.size());
  sc.success = true;
  sc.status = "certified";
  return sc;
}

GeneralizedData generalized_prepare(const Problem& p, const ExistenceRun& run) {
  require_stability_inputs(p, run);
  const ExistenceCertificate& c = run.cert;
  const int N = c.N;
  const int m = p.spec.m;
  if (N < 4 * m) throw std::invalid_argument("generalized_prepare: requires N >= 4m");
  GeneralizedData g;
  g.N = N;
  g.m = m;
  const KOperator& K0 = p.K[0];
  const IMat L = K0.matrix(N);
  g.pd = pseudo_diagonalize(run.A0, L, p.spec.parity);
  const PseudoDiag& pd = g.pd;
  auto& q = g.q;

  // Splitting M0 = S0 + R0 with S0 a point diagonal.
  const CIMat W0 = cimat_mul(imat_mul(run.A0, L.resized(N + 1, N + 1)), pd.P0);
  CIMat RW0 = cimat_mul(pd.R, W0);
  g.S0 = Eigen::VectorXcd::Zero(N + 1);
  for (int n = 0; n <= N; ++n) {
    const CInterval z = RW0.at(n, n);
    g.S0(n) = z.mid();
    RW0.set(n, n, z - CInterval(g.S0(n)));
  }
  q["R0"] = cimat_opnorm(RW0) + pd.theta * cimat_opnorm(W0);

  const IMat Dm = IMat::identity(N + 1) - imat_mul(run.A0, run.df.DFN());
  q["Z1P0"] = pinv_times_norm(pd, cimat_mul(Dm, pd.P0));
  const Interval A0n = imat_opnorm(run.A0, 1.0);
  const Interval PA = cimat_opnorm(cimat_mul(pd.R, CIMat(run.A0))) + pd.theta * A0n;
  q["P0invA0"] = PA;
  const Interval z2r = c.Z2raw * c.r;
  q["Z2P0r"] = PA * z2r * pd.P0_norm;
  q["Z2leNr"] = A0n * z2r;
  q["Z2gtNr"] = z2r;

  // Finite blocks: rows > N of DF𝒫0 and ℒ⁻¹𝒫0, and the rows ≤ N fed back from columns > N.
  const IMat& DF = run.df.DFext;
  const int Nc = std::max(DF.rows, L.rows) - 1;
  const CIMat W = cresized(cimat_mul(DF.masked(N + 1, DF.rows - 1, 0, N), pd.P0), Nc + 1, N + 1);
  const CIMat LW = cresized(cimat_mul(L.masked(N + 1, L.rows - 1, 0, N), pd.P0), Nc + 1, N + 1);
  const IMat DKc = eval_DF(c.Ubar, p, Nc).DFext.resized(N + 1, Nc + 1).masked(0, N, N + 1, Nc);
  const IMat Lc = K0.matrix(Nc).resized(N + 1, Nc + 1).masked(0, N, N + 1, Nc);
  auto pa_norm = [&](const CIMat& X) { return pinv_times_norm(pd, cimat_mul(run.A0, X)); };

  Interval b14a(0.0);
  for (int i = 0; i < 2 * m; ++i) {
    const CoeffSeq& v = run.df.V[static_cast<size_t>(i)];
    if (v.size() == 0) continue;
    const IMat AT = imat_mul(run.A0, conv_matrix(v, N + 1, N + v.size() + 1));
    b14a += (cimat_opnorm(cimat_mul(pd.R, CIMat(AT))) + pd.theta * imat_opnorm(AT, 1.0)) *
            p.K[static_cast<size_t>(i)].eta(N + 1);
  }
  const Interval eta0 = K0.eta(N + 1);
  q["B14a"] = b14a;
  q["beta01"] = cimat_opnorm(W) + pd.P0_norm * q["Z2gtNr"];
  q["beta02"] = pa_norm(cimat_mul(DKc, W)) + b14a * pd.P0_norm * q["Z2gtNr"];
  q["beta11"] = eta0 * PA * q["beta01"];
  q["beta12"] = cimat_opnorm(LW);
  q["beta13"] = pa_norm(cimat_mul(DKc, LW));
  q["beta14"] = b14a + pd.P0inv_norm * q["Z2leNr"];
  q["beta21"] = pa_norm(cimat_mul(Lc, LW));
  q["beta22"] = eta0 * PA;
  q["theta"] = pd.theta;
  q["P0_norm"] = pd.P0_norm;
  q["P0inv_norm"] = pd.P0inv_norm;
  g.eps_base = c.parts.Z12;
  g.gamma_2m = gamma_bound(2 * m, N + 1, 1.0);
  return g;
}

GeneralizedDisks generalized_delta(const std::map<std::string, Interval>& q, const Interval& eps_base,
                                   const Interval& gamma_2m, const Interval& lambda_max) {
  GeneralizedDisks gd;
  auto Q = [&](const char* k) {
    const auto it = q.find(k);
    if (it == q.end()) throw std::invalid_argument(std::string("generalized_delta: missing quantity ") + k);
    return it->second;
  };
  const Interval lm = lambda_max;
  gd.epsilon = eps_base + lm * gamma_2m;
  if (!(gd.epsilon.hi < 1.0)) {
    gd.status = "tail not contractive, increase N";
    return gd;
  }
  const Interval f = gd.epsilon / (kOne - gd.epsilon);
  const Interval z2 = Q("P0inv_norm") * Q("Z2leNr");
  gd.beta2 = Q("beta21") + f * Q("beta12") * Q("beta22");
  gd.beta1 = Q("beta11") + Q("beta13") + z2 * Q("beta12") +
             f * (Q("beta12") * Q("beta14") + Q("beta01") * Q("beta22"));
  gd.beta0 = Q("beta02") + z2 * Q("beta01") + f * Q("beta01") * Q("beta14");
  gd.delta = lm * Q("R0") + gd.beta2 * sqr(lm) + gd.beta1 * lm + gd.beta0 + Q("Z1P0") + Q("Z2P0r");
  gd.ok = true;
  gd.status = "ok";
  return gd;
}

GeneralizedDisks generalized_disks(const GeneralizedData& g, const Interval& lambda_max) {
  GeneralizedDisks gd = generalized_delta(g.q, g.eps_base, g.gamma_2m, lambda_max);
  if (!gd.ok) return gd;
  for (int j = 0; j <= g.N; ++j) {
    DiskEnclosure d;
    d.kind = DiskKind::generalized;
    d.index = j;
    const std::complex<double> mu = g.S0(j);
    if (mu == std::complex<double>(0.0, 0.0)) {
      d.active = false;  // λ_j = ∞
      d.center = CInterval(Interval(0.0), Interval(0.0));
      d.radius = Interval(0.0);
    } else {
      d.active = std::binary_search(g.pd.active.begin(), g.pd.active.end(), j);
      d.center = CInterval(kOne) / CInterval(mu);
      d.radius = Interval((gd.delta * cabs(d.center)).hi);
    }
    gd.disks.push_back(d);
  }
  return gd;
}

StabilityCertificate count_unstable_generalized(const GeneralizedDisks& gd, const Interval& lambda_max) {
  StabilityCertificate sc;
  sc.method = StabilityMethod::generalized;
  sc.disks = gd.disks;
  sc.lambda_max = lambda_max;
  sc.quantities["epsilon"] = gd.epsilon;
  sc.quantities["delta"] = gd.delta;
  sc.quantities["beta0"] = gd.beta0;
  sc.quantities["beta1"] = gd.beta1;
  sc.quantities["beta2"] = gd.beta2;
  sc.delta_history.push_back(gd.delta.hi);
  if (!gd.ok) {
    sc.status = "inconclusive: " + gd.status;
    return sc;
  }
  std::vector<int> unstable, inside;
  for (int k = 0; k < static_cast<int>(gd.disks.size()); ++k) {
    const DiskEnclosure& d = gd.disks[static_cast<size_t>(k)];
    if (!d.active) continue;
    if (disk_abs_min(d) > lambda_max.hi) continue;  // cannot hold an eigenvalue with |λ| ≤ λmax
    if (disk_re_min(d) > 0 && disk_abs_max(d) < lambda_max.lo) {
      unstable.push_back(k);
    } else if (disk_re_max(d) < 0) {
      inside.push_back(k);
    } else {
      sc.status = "inconclusive: disk straddles the classification regions";
      sc.offending = d.index;
      return sc;
    }
  }
  for (int u : unstable)
    for (int o : inside)
      if (!disks_disjoint(gd.disks[static_cast<size_t>(u)], gd.disks[static_cast<size_t>(o)])) {
        sc.status = "inconclusive: unstable disk meets another disk";
        sc.offending = gd.disks[static_cast<size_t>(u)].index;
        return sc;
      }
  double mre = -std::numeric_limits<double>::infinity();
  for (int o : inside) mre = std::fmax(mre, disk_re_max(gd.disks[static_cast<size_t>(o)]));
  sc.max_re_stable = Interval(mre);
  for (int u : unstable) {
    sc.unstable_indices.push_back(gd.disks[static_cast<size_t>(u)].index);
    sc.unstable_enclosures.push_back(gd.disks[static_cast<size_t>(u)]);
  }
  sc.n_unstable = static_cast<int>(unstable.size());
  sc.success = true;
  sc.status = "certified";
  return sc;
}

StabilityCertificate generalized_with_refinement(const GeneralizedData& g, const Interval& lambda_max, int passes) {
  StabilityCertificate best = count_unstable_generalized(generalized_disks(g, lambda_max), lambda_max);
  std::vector<double> hist = best.delta_history;
  const Interval first_max_re = best.max_re_stable;
  const bool first_ok = best.success;
  Interval lm = lambda_max;
  for (int pass = 1; pass < passes && best.success && best.n_unstable > 0; ++pass) {
    double nl = 0.0;
    for (const auto& d : best.unstable_enclosures) nl = std::fmax(nl, disk_abs_max(d));
    // Every unstable eigenvalue lies in the unstable group, hence in B_nl(0).
    if (!(nl < lm.lo)) break;
    lm = Interval(nl);
    StabilityCertificate next = count_unstable_generalized(generalized_disks(g, lm), lm);
    hist.push_back(next.delta_history.front());
    if (!next.success) break;
    best = next;
  }
  best.delta_history = hist;
  for (const auto& [k, v] : g.q) best.quantities[k] = v;
  best.quantities["lambda_max_pass1"] = lambda_max;
  best.quantities["eps_base"] = g.eps_base;
  best.quantities["gamma_2m"] = g.gamma_2m;
  if (first_ok) best.quantities["max_re_stable_pass1"] = first_max_re;
  return best;
}

}  // namespace chebcap
