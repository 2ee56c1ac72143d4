#include "chebcap/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace chebcap {

int Monomial::degree() const {
  int d = 0;
  for (int e : exps) d += e;
  return d;
}

void ProblemSpec::validate() const {
  boundary.validate();
  if (boundary.m != m) throw std::invalid_argument("ProblemSpec: boundary order mismatch");
  if (N < 4 * m) throw std::invalid_argument("ProblemSpec: N >= 4m required");
  if (nu < 1.0) throw std::invalid_argument("ProblemSpec: nu >= 1 required");
  for (const auto& mo : monomials) {
    if (static_cast<int>(mo.exps.size()) != 2 * m) throw std::invalid_argument("ProblemSpec: monomial needs 2m exponents");
    for (int e : mo.exps)
      if (e < 0) throw std::invalid_argument("ProblemSpec: negative exponent");
  }
  for (const auto& l : linear)
    if (l.i < 0 || l.i >= 2 * m) throw std::invalid_argument("ProblemSpec: linear term order out of range");
  if (psi.basis_order != 0) throw std::invalid_argument("ProblemSpec: source must be in the Chebyshev basis");
}

std::vector<bool> ProblemSpec::used_orders() const {
  std::vector<bool> u(static_cast<size_t>(2 * m), false);
  for (const auto& mo : monomials)
    for (int i = 0; i < 2 * m; ++i)
      if (mo.exps[static_cast<size_t>(i)] > 0) u[static_cast<size_t>(i)] = true;
  for (const auto& l : linear) u[static_cast<size_t>(l.i)] = true;
  return u;
}

Problem build_problem(const ProblemSpec& spec) {
  spec.validate();
  Problem p;
  p.spec = spec;
  for (int i = 0; i < 2 * spec.m; ++i) p.K.push_back(build_Ki(spec.boundary, i, spec.nu, spec.parity));
  if (spec.sharp == SharpBounds::dirichlet) {
    attach_dirichlet_bounds(p.K[0]);
  } else if (spec.sharp == SharpBounds::neumann_odd_fourth && spec.nu == 1.0) {
    p.ks = ks_operator_norm_bounds(200);
    attach_ks_bounds(p.K, p.ks);
  }
  return p;
}

namespace {

CoeffSeq one_seq(double nu) {
  CoeffSeq e(1, nu, Parity::even);
  e[0] = Interval(1.0);
  return e;
}

void accumulate(CoeffSeq& total, const CoeffSeq& t, bool& empty) {
  if (empty) {
    total = t;
    empty = false;
  } else {
    total = total + t;
  }
}

CoeffSeq power(const CoeffSeq& a, int e, double nu) {
  CoeffSeq r = one_seq(nu);
  for (int k = 0; k < e; ++k) r = conv(r, a);
  return r;
}

std::vector<CoeffSeq> apply_all(const CoeffSeq& U, const Problem& p) {
  CoeffSeq in = U;
  in.nu = p.spec.nu;
  const auto used = p.spec.used_orders();
  std::vector<CoeffSeq> kU(used.size());
  for (size_t i = 0; i < used.size(); ++i)
    if (used[i]) kU[i] = p.K[i].apply(in);
  return kU;
}

bool is_zero(const Interval& x) { return x.lo == 0 && x.hi == 0; }

}  // namespace

CoeffSeq eval_K(const CoeffSeq& U, const Problem& p) {
  const double nu = p.spec.nu;
  const auto kU = apply_all(U, p);
  CoeffSeq total(0, nu, p.spec.parity);
  bool empty = true;
  for (const auto& mo : p.spec.monomials) {
    CoeffSeq t = one_seq(nu);
    for (size_t i = 0; i < mo.exps.size(); ++i)
      if (mo.exps[i] > 0) t = conv(t, power(kU[i], mo.exps[i], nu));
    accumulate(total, mo.coef * t, empty);
  }
  for (const auto& l : p.spec.linear) accumulate(total, l.coef * kU[static_cast<size_t>(l.i)], empty);
  return total;
}

CoeffSeq eval_F(const CoeffSeq& U, const Problem& p) {
  if (p.spec.parity != Parity::none) {
    CoeffSeq t = U;
    t.parity = p.spec.parity;
    if (!t.parity_consistent()) throw std::invalid_argument("eval_F: input violates parity restriction");
  }
  CoeffSeq u = U;
  u.nu = p.spec.nu;
  u.parity = p.spec.parity;
  CoeffSeq r = u + eval_K(u, p);
  if (p.spec.psi.size() > 0) {
    CoeffSeq psi = p.spec.psi;
    psi.nu = p.spec.nu;
    r = r + psi;
  }
  return r;
}

IMat conv_matrix(const CoeffSeq& V, int rows, int cols) {
  IMat T(rows, cols);
  for (int k = 0; k < cols; ++k)
    for (int n = 0; n < rows; ++n) {
      if (k == 0) {
        T(n, k) = V.at(n);
      } else {
        const Interval a = V.at(std::abs(n - k));
        const Interval b = V.at(n + k);
        T(n, k) = is_zero(b) ? a : a + b;
      }
    }
  return T;
}

std::vector<CoeffSeq> eval_multipliers(const CoeffSeq& Ubar, const Problem& p) {
  const double nu = p.spec.nu;
  const auto kU = apply_all(Ubar, p);
  const int nk = 2 * p.spec.m;
  std::vector<CoeffSeq> V(static_cast<size_t>(nk));
  std::vector<bool> empty(static_cast<size_t>(nk), true);
  for (const auto& mo : p.spec.monomials) {
    for (int i = 0; i < nk; ++i) {
      const int ei = mo.exps[static_cast<size_t>(i)];
      if (ei == 0) continue;
      CoeffSeq t = one_seq(nu);
      for (int l = 0; l < nk; ++l) {
        const int el = mo.exps[static_cast<size_t>(l)] - (l == i ? 1 : 0);
        if (el > 0) t = conv(t, power(kU[static_cast<size_t>(l)], el, nu));
      }
      bool e = empty[static_cast<size_t>(i)];
      accumulate(V[static_cast<size_t>(i)], (mo.coef * Interval(static_cast<double>(ei))) * t, e);
      empty[static_cast<size_t>(i)] = e;
    }
  }
  for (const auto& l : p.spec.linear) {
    CoeffSeq c = one_seq(nu);
    c[0] = l.coef;
    bool e = empty[static_cast<size_t>(l.i)];
    accumulate(V[static_cast<size_t>(l.i)], c, e);
    empty[static_cast<size_t>(l.i)] = e;
  }
  for (auto& v : V) v.nu = nu;
  return V;
}

DFData eval_DF(const CoeffSeq& Ubar, const Problem& p, int N) {
  DFData d;
  d.N = N;
  d.V = eval_multipliers(Ubar, p);
  const int nk = 2 * p.spec.m;
  d.Kmat.resize(static_cast<size_t>(nk));
  int rows = N + 1;
  for (int i = 0; i < nk; ++i) {
    const CoeffSeq& v = d.V[static_cast<size_t>(i)];
    if (v.size() == 0) continue;
    d.Kmat[static_cast<size_t>(i)] = p.K[static_cast<size_t>(i)].matrix(N);
    rows = std::max(rows, d.Kmat[static_cast<size_t>(i)].rows + v.size() - 1);
  }
  d.DFext = IMat(rows, N + 1);
#pragma omp parallel for schedule(dynamic) num_threads(worker_threads())
  for (int n = 0; n <= N; ++n) {
    CoeffSeq col(rows, p.spec.nu, Parity::none);
    col[n] = Interval(1.0);
    if (parity_allows(p.spec.parity, n)) {
      for (int i = 0; i < nk; ++i) {
        const CoeffSeq& v = d.V[static_cast<size_t>(i)];
        if (v.size() == 0) continue;
        CoeffSeq kc = d.Kmat[static_cast<size_t>(i)].column(n, p.spec.nu, Parity::none);
        kc.trim();
        CoeffSeq vv = v;
        vv.parity = Parity::none;
        col = col + conv(vv, kc);
      }
    }
    d.DFext.set_column(n, col);
  }
  return d;
}

Interval bound_Y(const CoeffSeq& Ubar, const IMat& A0, const Problem& p, int N) {
  const CoeffSeq F = eval_F(Ubar, p);
  CoeffSeq head = project(F, N, Side::leq);
  head.ensure(N + 1);
  CoeffSeq ah = imat_apply(A0, head);
  ah.nu = p.spec.nu;
  return norm_ell1nu(ah) + norm_ell1nu(project(F, N, Side::gt));
}

Z1Parts bound_Z1(const DFData& df, const IMat& A0, const Problem& p) {
  const int N = df.N;
  const double nu = p.spec.nu;
  const int m = p.spec.m;
  Z1Parts z;
  z.Z10 = imat_opnorm(IMat::identity(N + 1) - imat_mul(A0, df.DFN()), nu);
  z.Z11 = imat_opnorm(df.DFext.masked(N + 1, df.DFext.rows - 1, 0, N), nu);
  z.Z12 = Interval(0.0);
  z.Z13 = Interval(0.0);
  for (int i = 0; i < 2 * m; ++i) {
    const CoeffSeq& v = df.V[static_cast<size_t>(i)];
    if (v.size() == 0) continue;
    const KOperator& K = p.K[static_cast<size_t>(i)];
    Interval tail(0.0);
    for (int n = std::max(N - 2 * m + i + 1, 0); n < v.size(); ++n) tail += abs(v[n]) * nu_pow(nu, n);
    z.Z12 += Interval(2.0) * K.head_bound(N + 1) * tail + norm_ell1nu(v) * gamma_bound(2 * m - i, N + 1, nu);
    const IMat T = conv_matrix(v, N + 1, N + v.size() + 1);
    z.Z13 += imat_opnorm(imat_mul(A0, T), nu) * K.eta(N + 1);
  }
  z.Z1 = max(z.Z10 + z.Z11, z.Z12 + z.Z13);
  return z;
}

Interval bound_Z2raw(const Problem& p, int N) {
  Interval s(0.0);
  for (const auto& mo : p.spec.monomials) {
    const int d = mo.degree();
    if (d <= 1) continue;
    if (d > 2) {
      std::ostringstream os;
      os << "bound_Z2: nonlinearity of degree " << d << " not supported (implemented: degree <= 2)";
      throw std::invalid_argument(os.str());
    }
    int a = -1, b = -1;
    for (int i = 0; i < 2 * p.spec.m; ++i) {
      for (int e = 0; e < mo.exps[static_cast<size_t>(i)]; ++e) (a < 0 ? a : b) = i;
    }
    s += Interval(2.0) * abs(mo.coef) * p.K[static_cast<size_t>(a)].norm(N) * p.K[static_cast<size_t>(b)].norm(N);
  }
  return s;
}

bool radii_hold(const Interval& Y, const Interval& Z1, const Interval& Z2, const Interval& r) {
  const Interval poly = Interval(0.5) * Z2 * sqr(r) - (Interval(1.0) - Z1) * r + Y;
  const Interval second = Z1 + Z2 * r;
  return r.lo > 0 && poly.hi < 0 && second.hi < 1.0;
}

RadiiResult radii_check(const Interval& Y, const Interval& Z1, const Interval& Z2) {
  RadiiResult res;
  if (Y.lo < 0 || Z1.lo < 0 || Z2.lo < 0) {
    res.reason = "negative bound";
    return res;
  }
  if (Z1.hi >= 1.0) {
    res.reason = "Z1 >= 1";
    return res;
  }
  const Interval a = Interval(1.0) - Z1;
  double rstar;
  if (Z2.hi == 0.0) {
    rstar = (Y / a).hi;
  } else {
    const Interval disc = sqr(a) - Interval(2.0) * Y * Z2;
    if (disc.lo <= 0) {
      res.reason = "discriminant not positive";
      return res;
    }
    // Smaller root written as 2Y / (a + sqrt(disc)) to avoid cancellation.
    rstar = (Interval(2.0) * Y / (a + sqrt(disc))).hi;
  }
  rstar = rnd::mul_up(rstar, 1.01);
  if (rstar <= 0) rstar = 1e-300;
  res.r = Interval(rstar);
  if (!radii_hold(Y, Z1, Z2, res.r)) {
    const Interval poly = Interval(0.5) * Z2 * sqr(res.r) - a * res.r + Y;
    res.reason = poly.hi >= 0 ? "radii polynomial not negative at r*" : "Z1 + Z2 r >= 1 at r*";
    return res;
  }
  res.ok = true;
  return res;
}

ExistenceRun prove_existence(const Problem& p, const CoeffSeq& Ubar, const IMat& A0in) {
  ExistenceRun run;
  const int N = p.spec.N;
  const double nu = p.spec.nu;
  ExistenceCertificate& c = run.cert;
  c.problem = p.spec.id;
  c.alpha = p.spec.alpha;
  c.N = N;
  c.nu = nu;
  c.parity = p.spec.parity;
  c.Ubar = project(Ubar, N, Side::leq);
  c.Ubar.nu = nu;
  c.Ubar.parity = p.spec.parity;
  c.Ubar.ensure(N + 1);

  run.df = eval_DF(c.Ubar, p, N);
  if (A0in.rows == 0) {
    const Eigen::MatrixXd dfn = run.df.DFN().mid();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(dfn);
    if (!lu.isInvertible()) {
      c.status = "failed: DF^{<=N} numerically singular";
      return run;
    }
    run.A0 = IMat::from_point(lu.inverse());
  } else {
    run.A0 = A0in;
  }

  c.Y = bound_Y(c.Ubar, run.A0, p, N);
  c.parts = bound_Z1(run.df, run.A0, p);
  c.Z1 = c.parts.Z1;
  c.Z2raw = bound_Z2raw(p, N);
  c.A_norm = max(imat_opnorm(run.A0, nu), Interval(1.0));
  c.Z2 = c.A_norm * c.Z2raw;
  for (int i = 0; i < 2 * p.spec.m; ++i) {
    const KOperator& K = p.K[static_cast<size_t>(i)];
    c.K_norms.push_back(K.norm(N));
    c.eta_next.push_back(K.eta(N + 1));
    c.head_next.push_back(K.head_bound(N + 1));
  }
  const RadiiResult rr = radii_check(c.Y, c.Z1, c.Z2);
  if (!rr.ok) {
    c.status = "failed: " + rr.reason;
    return run;
  }
  c.r = rr.r;
  c.success = true;
  c.status = "certified";
  return run;
}

namespace {

Eigen::VectorXd conv_d(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const int la = static_cast<int>(a.size()) - 1;
  const int lb = static_cast<int>(b.size()) - 1;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(la + lb + 1);
  for (int n = 0; n <= la + lb; ++n) {
    double s = 0.0;
    for (int q = std::max(-la, n - lb); q <= std::min(la, n + lb); ++q) s += a(std::abs(q)) * b(std::abs(n - q));
    w(n) = s;
  }
  return w;
}

Eigen::VectorXd pow_d(const Eigen::VectorXd& a, int e) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(1);
  r(0) = 1.0;
  for (int k = 0; k < e; ++k) r = conv_d(r, a);
  return r;
}

void add_trunc(Eigen::VectorXd& acc, const Eigen::VectorXd& t, double c) {
  const Eigen::Index n = std::min(acc.size(), t.size());
  acc.head(n) += c * t.head(n);
}

}  // namespace

std::vector<Eigen::MatrixXd> point_kmats(const Problem& p, int N) {
  const auto used = p.spec.used_orders();
  std::vector<Eigen::MatrixXd> r(used.size());
  for (size_t i = 0; i < used.size(); ++i)
    if (used[i]) r[i] = p.K[i].matrix(N).mid();
  return r;
}

PointModel make_point_model(const ProblemSpec& spec, const std::vector<Eigen::MatrixXd>& kmats, int N) {
  PointModel pm;
  pm.N = N;
  pm.m = spec.m;
  pm.Kmat = kmats;
  pm.used = spec.used_orders();
  for (const auto& mo : spec.monomials) {
    pm.mono_coef.push_back(mo.coef.mid());
    pm.mono_exps.push_back(mo.exps);
  }
  for (const auto& l : spec.linear) {
    pm.lin_coef.push_back(l.coef.mid());
    pm.lin_i.push_back(l.i);
  }
  pm.psi = Eigen::VectorXd::Zero(N + 1);
  for (int n = 0; n <= std::min(N, spec.psi.last()); ++n) pm.psi(n) = spec.psi[n].mid();
  return pm;
}

Eigen::VectorXd PointModel::residual(const Eigen::VectorXd& U) const {
  std::vector<Eigen::VectorXd> kU(used.size());
  for (size_t i = 0; i < used.size(); ++i)
    if (used[i]) kU[i] = Kmat[i] * U;
  Eigen::VectorXd F = U + psi;
  for (size_t t = 0; t < mono_coef.size(); ++t) {
    Eigen::VectorXd prod = Eigen::VectorXd::Ones(1);
    for (size_t i = 0; i < mono_exps[t].size(); ++i)
      if (mono_exps[t][i] > 0) prod = conv_d(prod, pow_d(kU[i], mono_exps[t][i]));
    add_trunc(F, prod, mono_coef[t]);
  }
  for (size_t t = 0; t < lin_coef.size(); ++t) add_trunc(F, kU[static_cast<size_t>(lin_i[t])], lin_coef[t]);
  return F;
}

Eigen::MatrixXd PointModel::jacobian(const Eigen::VectorXd& U) const {
  const int nk = static_cast<int>(used.size());
  std::vector<Eigen::VectorXd> kU(static_cast<size_t>(nk));
  for (int i = 0; i < nk; ++i)
    if (used[static_cast<size_t>(i)]) kU[static_cast<size_t>(i)] = Kmat[static_cast<size_t>(i)] * U;
  std::vector<Eigen::VectorXd> V(static_cast<size_t>(nk));
  for (size_t t = 0; t < mono_coef.size(); ++t) {
    for (int i = 0; i < nk; ++i) {
      const int ei = mono_exps[t][static_cast<size_t>(i)];
      if (ei == 0) continue;
      Eigen::VectorXd prod = Eigen::VectorXd::Ones(1);
      for (int l = 0; l < nk; ++l) {
        const int el = mono_exps[t][static_cast<size_t>(l)] - (l == i ? 1 : 0);
        if (el > 0) prod = conv_d(prod, pow_d(kU[static_cast<size_t>(l)], el));
      }
      prod *= mono_coef[t] * ei;
      auto& v = V[static_cast<size_t>(i)];
      if (v.size() < prod.size()) v.conservativeResizeLike(Eigen::VectorXd::Zero(prod.size()));
      v.head(prod.size()) += prod;
    }
  }
  for (size_t t = 0; t < lin_coef.size(); ++t) {
    auto& v = V[static_cast<size_t>(lin_i[t])];
    if (v.size() == 0) v = Eigen::VectorXd::Zero(1);
    v(0) += lin_coef[t];
  }
  Eigen::MatrixXd J = Eigen::MatrixXd::Identity(N + 1, N + 1);
  for (int i = 0; i < nk; ++i) {
    const auto& v = V[static_cast<size_t>(i)];
    if (v.size() == 0) continue;
    const Eigen::MatrixXd& K = Kmat[static_cast<size_t>(i)];
    const int cols = static_cast<int>(K.rows());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(N + 1, cols);
    auto at = [&](int j) { return (j >= 0 && j < v.size()) ? v(j) : 0.0; };
    for (int k = 0; k < cols; ++k)
      for (int n = 0; n <= N; ++n) T(n, k) = (k == 0) ? at(n) : at(std::abs(n - k)) + at(n + k);
    J += T * K;
  }
  return J;
}

}  // namespace chebcap
