#include "chebcap/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chebcap {

namespace {

Interval sq_minus(int k, int j) { return Interval(static_cast<double>(k) * k - static_cast<double>(j) * j); }

CoeffSeq unit(int n, double nu) {
  CoeffSeq e(n + 1, nu, Parity::none);
  e[n] = Interval(1.0);
  e.parity = (n % 2) ? Parity::odd : Parity::even;
  return e;
}

bool all_overlap(const CoeffSeq& a, const CoeffSeq& b) {
  const int n = std::max(a.size(), b.size());
  for (int k = 0; k < n; ++k)
    if (!a.at(k).overlaps(b.at(k))) return false;
  return true;
}

}  // namespace

Interval gamma_bound(int i, int k, double nu) {
  if (i < 1) throw std::invalid_argument("gamma_bound: i >= 1 required");
  if (k < 2 * i) throw std::invalid_argument("gamma_bound: k >= 2i required");
  // From 𝒮^{(1)}E_k = ν/(2(k+1))E_{k+1} − 1/(2ν(k−1))E_{k−1}: factors k² − (2j)² for even i, k² − (2j+1)² for odd i.
  Interval prod(1.0);
  if (i % 2 == 0) {
    for (int j = 1; j <= i / 2; ++j) prod = prod / sq_minus(k, 2 * j);
  } else {
    prod = Interval(static_cast<double>(k));
    for (int j = 0; j <= i / 2; ++j) prod = prod / sq_minus(k, 2 * j + 1);
  }
  return nu_pow(nu, i) * prod;
}

Interval bc_tail_bound(int i, int j, int k, double nu) {
  if (!(i > j && j >= 0)) throw std::invalid_argument("bc_tail_bound: need i > j >= 0");
  if (k < 2 * i) throw std::invalid_argument("bc_tail_bound: k >= 2i required");
  return gamma_bound(i - j, k, 1.0) / nu_pow(nu, k);
}

IMat interval_inverse(const IMat& q) {
  if (q.rows != q.cols) throw std::invalid_argument("interval_inverse: square matrix required");
  const int n = q.rows;
  IMat a = q;
  IMat inv = IMat::identity(n);
  std::vector<bool> used(static_cast<size_t>(n), false);
  std::vector<int> pivot_row(static_cast<size_t>(n), -1);
  for (int col = 0; col < n; ++col) {
    int best = -1;
    double best_mig = 0.0;
    for (int r = 0; r < n; ++r) {
      if (used[static_cast<size_t>(r)]) continue;
      const double mg = a(r, col).mig();
      if (mg > best_mig) {
        best_mig = mg;
        best = r;
      }
    }
    if (best < 0) {
      std::ostringstream os;
      os << "ill-posed boundary conditions: no certified pivot in column " << col;
      throw IllPosedBoundary(os.str());
    }
    used[static_cast<size_t>(best)] = true;
    pivot_row[static_cast<size_t>(col)] = best;
    const Interval p = a(best, col);
    for (int c = 0; c < n; ++c) {
      a(best, c) = a(best, c) / p;
      inv(best, c) = inv(best, c) / p;
    }
    a(best, col) = Interval(1.0);
    for (int r = 0; r < n; ++r) {
      if (r == best) continue;
      const Interval f = a(r, col);
      if (f.lo == 0 && f.hi == 0) continue;
      for (int c = 0; c < n; ++c) {
        a(r, c) = a(r, c) - f * a(best, c);
        inv(r, c) = inv(r, c) - f * inv(best, c);
      }
      a(r, col) = Interval(0.0);
    }
  }
  // Row pivot_row[col] of the reduced system now holds unknown col.
  IMat out(n, n);
  for (int col = 0; col < n; ++col)
    for (int c = 0; c < n; ++c) out(col, c) = inv(pivot_row[static_cast<size_t>(col)], c);
  return out;
}

CoeffSeq KOperator::apply(const CoeffSeq& U) const {
  if (U.basis_order != 0) throw std::invalid_argument("KOperator: Chebyshev input required");
  if (parity != Parity::none) {
    CoeffSeq tagged = U;
    tagged.parity = parity;
    if (!tagged.parity_consistent()) throw std::invalid_argument("KOperator: input violates parity restriction");
  }
  CoeffSeq in = U;
  in.nu = nu;
  in.parity = parity;
  const Interval sign((m % 2) ? 1.0 : -1.0);  // (-1)^{m+1}
  CoeffSeq w0 = sign * apply_Si(in, 2 * m - i);
  w0.parity = range_parity();
  const CoeffSeq v0 = (i > 0) ? apply_Si(w0, i) : w0;
  const int nr = B.count();
  std::vector<Interval> rhs(static_cast<size_t>(nr));
  for (int r = 0; r < nr; ++r) rhs[static_cast<size_t>(r)] = -B.apply_row(r, v0);
  CoeffSeq out = w0;
  out.ensure(2 * m - i);
  const int np = static_cast<int>(p_idx.size());
  for (size_t qi = 0; qi < q_idx.size(); ++qi) {
    Interval s(0.0);
    for (int r = 0; r < nr; ++r) s += Qinv(np + static_cast<int>(qi), r) * rhs[static_cast<size_t>(r)];
    out[q_idx[qi]] += s;
  }
  out.parity = range_parity();
  out.nu = nu;
  return out;
}

CoeffSeq KOperator::apply_unit(int n) const {
  CoeffSeq e = unit(n, nu);
  e.parity = Parity::none;
  return apply(e);
}

IMat KOperator::matrix(int N) const {
  IMat M(N + reach() + 1, N + 1);
#pragma omp parallel for schedule(dynamic) num_threads(worker_threads())
  for (int n = 0; n <= N; ++n) {
    if (!parity_allows(parity, n)) continue;
    M.set_column(n, apply_unit(n));
  }
  return M;
}

Interval KOperator::head_bound(int k) const {
  if (k <= 4 * m) throw std::invalid_argument("head_bound: k > 4m required");
  const int np = static_cast<int>(p_idx.size());
  Interval total(0.0);
  for (size_t qi = 0; qi < q_idx.size(); ++qi) {
    const int c = q_idx[qi];
    Interval acc(0.0);
    for (int r = 0; r < B.count(); ++r) {
      const auto& w = B.rows[static_cast<size_t>(r)].weights;
      Interval rowb(0.0);
      for (int j = 0; j < static_cast<int>(w.size()); ++j)
        if (w[static_cast<size_t>(j)] != 0.0)
          rowb += Interval(std::fabs(w[static_cast<size_t>(j)])) * bc_tail_bound(2 * m, j, k, nu);
      acc += abs(Qinv(np + static_cast<int>(qi), r)) * rowb;
    }
    total += Interval(static_cast<double>(xi(c))) * nu_pow(nu, c) * acc;
  }
  return total;
}

Interval KOperator::generic_eta(int k) const {
  if (k <= 4 * m) throw std::invalid_argument("eta: k > 4m required");
  return gamma_bound(2 * m - i, k, nu) + head_bound(k);
}

Interval KOperator::eta(int k) const {
  Interval g = generic_eta(k);
  if (!sharp_eta) return g;
  Interval s = sharp_eta(k);
  return s.hi < g.hi ? s : g;
}

Interval KOperator::column_sup(int N) const {
  std::vector<Interval> cols;
  for (int n = 0; n <= N; ++n) {
    if (!parity_allows(parity, n)) continue;
    CoeffSeq c = apply_unit(n);
    cols.push_back(norm_ell1nu(c) / (Interval(static_cast<double>(xi(n))) * nu_pow(nu, n)));
  }
  return op_norm(cols, Interval(0.0));
}

Interval KOperator::norm(int N) const { return op_norm({column_sup(N)}, eta(N + 1)); }

KOperator build_Ki(const BoundarySpec& spec, int i, double nu, Parity parity, int check_N) {
  spec.validate();
  if (i < 0 || i > 2 * spec.m - 1) throw std::invalid_argument("build_Ki: need 0 <= i <= 2m-1");
  if (nu < 1.0) throw std::invalid_argument("build_Ki: nu >= 1 required");
  KOperator K;
  K.m = spec.m;
  K.i = i;
  K.nu = nu;
  K.parity = parity;
  K.B = build_B(spec, parity);
  for (int c = 0; c < i; ++c)
    if (parity_allows(parity, c)) K.p_idx.push_back(c);
  const Parity wpar = parity_shift(parity, i);
  for (int c = 0; c < 2 * spec.m - i; ++c)
    if (parity_allows(wpar, c)) K.q_idx.push_back(c);
  const int nu_count = static_cast<int>(K.p_idx.size() + K.q_idx.size());
  if (nu_count != K.B.count()) {
    std::ostringstream os;
    os << "ill-posed boundary conditions: " << K.B.count() << " rows for " << nu_count << " free coefficients";
    throw IllPosedBoundary(os.str());
  }
  IMat Q(nu_count, nu_count);
  int col = 0;
  for (int c : K.p_idx) {
    const CoeffSeq e = unit(c, nu);
    for (int r = 0; r < K.B.count(); ++r) Q(r, col) = K.B.apply_row(r, e);
    ++col;
  }
  for (int c : K.q_idx) {
    CoeffSeq e = unit(c, nu);
    const CoeffSeq s = (i > 0) ? apply_Si(e, i) : e;
    for (int r = 0; r < K.B.count(); ++r) Q(r, col) = K.B.apply_row(r, s);
    ++col;
  }
  K.Qinv = interval_inverse(Q);

  // Self-checks: boundary rows annihilate ℒ⁻¹e_n, and the (2m-i)-th derivative of 𝒦_i e_n
  // returns (-1)^{m+1} e_n.
  const Interval sign((spec.m % 2) ? 1.0 : -1.0);
  for (int n = 0; n <= check_N; ++n) {
    if (!parity_allows(parity, n)) continue;
    const CoeffSeq w = K.apply_unit(n);
    CoeffSeq wd = w;
    wd.parity = Parity::none;
    const CoeffSeq lhs = apply_Dk(wd, 2 * spec.m - i);
    const CoeffSeq rhs = sign * change_basis(unit(n, nu), 0, 2 * spec.m - i);
    if (!all_overlap(lhs, rhs)) throw std::logic_error("build_Ki: derivative self-check failed");
    if (i == 0) {
      for (const auto& b : K.B.apply(wd))
        if (!b.contains_zero()) throw std::logic_error("build_Ki: boundary self-check failed");
    }
  }
  return K;
}

KOperator build_Linv(const BoundarySpec& spec, double nu, Parity parity, int check_N) {
  return build_Ki(spec, 0, nu, parity, check_N);
}

CoeffSeq special_inverse_apply(SpecialInverse kind, const CoeffSeq& U) {
  if (U.basis_order != 0) throw std::invalid_argument("special_inverse_apply: Chebyshev input required");
  const int size = std::max(U.size() + 2, 3);
  if (kind == SpecialInverse::dirichlet) {
    CoeffSeq r(size, U.nu, U.parity);
    Interval h0 = -U.at(0) / Interval(4.0) + Interval::frac(7, 24) * U.at(2);
    for (int k = 2; 2 * k < U.size(); ++k) {
      const Interval d = Interval(static_cast<double>(k - 1)) * Interval(static_cast<double>(k + 1)) *
                         Interval(static_cast<double>(2 * k - 1)) * Interval(static_cast<double>(2 * k + 1));
      h0 -= Interval(1.5) * U[2 * k] / d;
    }
    Interval h1 = -U.at(1) / Interval(24.0) + U.at(3) / Interval(20.0);
    for (int k = 3; 2 * k - 1 < U.size(); ++k) {
      const Interval d = Interval(static_cast<double>(k - 1)) * Interval(static_cast<double>(k)) *
                         Interval(static_cast<double>(2 * k - 3)) * Interval(static_cast<double>(2 * k + 1));
      h1 -= Interval(0.75) * U[2 * k - 1] / d;
    }
    r[0] = h0;
    r[1] = h1;
    r[2] = U.at(0) / Interval(8.0) - U.at(2) / Interval(6.0) + U.at(4) / Interval(24.0);
    for (int n = 3; n < size; ++n) {
      const double dn = n;
      r[n] = U.at(n - 2) / Interval(4.0 * dn * (dn - 1)) - U.at(n) / Interval(2.0 * (dn * dn - 1)) +
             U.at(n + 2) / Interval(4.0 * dn * (dn + 1));
    }
    return r;
  }
  CoeffSeq tagged = U;
  tagged.parity = Parity::odd;
  if (!tagged.parity_consistent()) throw std::invalid_argument("special_inverse_apply: odd input required");
  CoeffSeq r(size, U.nu, Parity::odd);
  // v'(1) = 0 fixes V_1; U_3 has no V_1 neighbour in the banded rows, so its weight is 1/4 rather than 1/8.
  Interval h1 = Interval(-0.375) * U.at(1) + Interval(0.25) * U.at(3);
  for (int k = 5; k < U.size(); k += 2) h1 += U[k] / Interval(static_cast<double>(k) * k - 1.0);
  r[1] = h1;
  for (int n = 3; n < size; n += 2) {
    const double dn = n;
    r[n] = U.at(n - 2) / Interval(4.0 * dn * (dn - 1)) - U.at(n) / Interval(2.0 * (dn * dn - 1)) +
           U.at(n + 2) / Interval(4.0 * dn * (dn + 1));
  }
  return r;
}

Interval dirichlet_column_bound(int k, double nu) {
  if (k < 5) throw std::invalid_argument("dirichlet_column_bound: k >= 5 required");
  const double dk = k;
  const Interval v(nu);
  const Interval k21 = Interval(dk * dk - 1.0);
  // Entries k-2, k, k+2 carry weights ν^{-2}, 1, ν²; the boundary head sits at index 0 or 1.
  return Interval(1.0) / (sqr(v) * Interval(4.0 * (dk - 2) * (dk - 1))) + Interval(1.0) / (Interval(2.0) * k21) +
         sqr(v) / Interval(4.0 * (dk + 1) * (dk + 2)) +
         Interval(3.0) / (nu_pow(nu, k - 1) * k21 * Interval((dk - 2) * (dk + 1)));
}

Interval neumann_column_bound(int k) {
  if (k < 5) throw std::invalid_argument("neumann_column_bound: k >= 5 required");
  const double dk = k;
  const Interval k21(dk * dk - 1.0);
  return Interval(1.0) / k21 + Interval(1.0) / Interval(4.0 * (dk - 2) * (dk - 1)) +
         Interval(1.0) / (Interval(2.0) * k21) + Interval(1.0) / Interval(4.0 * (dk + 2) * (dk + 1));
}

KsNormBounds ks_operator_norm_bounds(int N) {
  if (N < 5) throw std::invalid_argument("ks_operator_norm_bounds: N >= 5 required");
  KsNormBounds b;
  b.N = N;
  std::vector<Interval> l1, s, k0, k1;
  for (int n = 1; n <= N; n += 2) {
    CoeffSeq e = basis_Ek(n, 1.0);
    e.parity = Parity::odd;
    const CoeffSeq a = special_inverse_apply(SpecialInverse::neumann_odd, e);
    const CoeffSeq a2 = special_inverse_apply(SpecialInverse::neumann_odd, a);
    CoeffSeq a2d = a;
    a2d.parity = Parity::odd;
    l1.push_back(norm_ell1nu(a));
    s.push_back(norm_ell1nu(apply_S(e)));
    k0.push_back(norm_ell1nu(a2));
    k1.push_back(norm_ell1nu(apply_S(a2d)));
  }
  const int tail_k = (N % 2) ? N + 2 : N + 1;  // first odd index beyond N
  const Interval l1_tail = neumann_column_bound(tail_k);
  b.linv1_norm = op_norm(l1, l1_tail);
  // Columns of 𝒮 on odd E_n with n ≥ 3 have norm 1/(n-1).
  b.s_norm = op_norm(s, Interval(1.0) / Interval(static_cast<double>(tail_k - 1)));
  b.k0_column = op_norm(k0, b.linv1_norm * l1_tail);
  b.k1_column = op_norm(k1, b.s_norm * l1_tail);
  return b;
}

void attach_dirichlet_bounds(KOperator& linv) {
  if (linv.m != 1 || linv.i != 0) throw std::invalid_argument("attach_dirichlet_bounds: second-order ℒ⁻¹ required");
  const double nu = linv.nu;
  linv.sharp_eta = [nu](int k) { return dirichlet_column_bound(k, nu); };
  linv.sharp_tag = "dirichlet-explicit";
}

void attach_ks_bounds(std::vector<KOperator>& k, const KsNormBounds& b) {
  if (k.size() != 4 || k[0].m != 2 || k[0].nu != 1.0)
    throw std::invalid_argument("attach_ks_bounds: fourth-order operators at nu = 1 required");
  const Interval c0 = b.linv1_norm;
  const Interval c1 = b.s_norm;
  k[0].sharp_eta = [c0](int n) { return c0 * neumann_column_bound(n); };
  k[1].sharp_eta = [c1](int n) { return c1 * neumann_column_bound(n); };
  k[2].sharp_eta = [](int n) { return neumann_column_bound(n); };
  for (int i = 0; i < 3; ++i) k[static_cast<size_t>(i)].sharp_tag = "neumann-factorized";
}

}  // namespace chebcap
