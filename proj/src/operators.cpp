#include "chebcap/operators.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace chebcap {

namespace {

Interval factorial(int k) {
  Interval r(1.0);
  for (int i = 2; i <= k; ++i) r = r * Interval(static_cast<double>(i));
  return r;
}

Interval pow2(int k) { return Interval(std::ldexp(1.0, k)); }

CoeffSeq like(const CoeffSeq& U, int size, Parity p, int order) { return CoeffSeq(size, U.nu, p, order); }

// One factor 𝒞_k of the change of basis G^{(k)} → G^{(k+1)}.
CoeffSeq change_once(const CoeffSeq& U, int k) {
  CoeffSeq r = like(U, U.size(), U.parity, k + 1);
  for (int n = 0; n < U.size(); ++n) {
    if (k == 0) {
      r[n] = (n == 0) ? U.at(0) - U.at(2) : Interval(0.5) * (U.at(n) - U.at(n + 2));
    } else if (n == 0) {
      r[n] = U.at(0) - Interval::frac(2.0 * k, 2.0 + k) * U.at(2);
    } else {
      r[n] = Interval::frac(k, n + k) * U.at(n) - Interval::frac(k, n + k + 2.0) * U.at(n + 2);
    }
  }
  return r;
}

}  // namespace

CoeffSeq apply_Dk(const CoeffSeq& U, int k) {
  if (k < 1) throw std::invalid_argument("apply_Dk: k >= 1 required");
  if (U.basis_order != 0) throw std::invalid_argument("apply_Dk: Chebyshev input required");
  const int size = std::max(U.size() - k, 1);
  CoeffSeq r = like(U, size, parity_shift(U.parity, k), k);
  const Interval c0 = pow2(k) * factorial(k);
  const Interval c1 = pow2(k - 1) * factorial(k - 1);
  r[0] = c0 * U.at(k);
  for (int n = 1; n < size; ++n) r[n] = Interval(static_cast<double>(n + k)) * c1 * U.at(n + k);
  return r;
}

CoeffSeq apply_shift(const CoeffSeq& U, int power) {
  if (power < 0) throw std::invalid_argument("apply_shift: power >= 0 required");
  CoeffSeq r = like(U, U.size() + power, parity_shift(U.parity, power), U.basis_order);
  for (int n = 0; n < U.size(); ++n) r[n + power] = U[n];
  return r;
}

CoeffSeq apply_Ddag(const CoeffSeq& U, int k) {
  if (k < 1) throw std::invalid_argument("apply_Ddag: k >= 1 required");
  CoeffSeq r = like(U, U.size(), U.parity, 0);
  if (U.size() > k) r[k] = U[k] / (pow2(k) * factorial(k));
  const Interval c1 = pow2(k - 1) * factorial(k - 1);
  for (int n = k + 1; n < U.size(); ++n) r[n] = U[n] / (Interval(static_cast<double>(n)) * c1);
  return r;
}

CoeffSeq change_basis(const CoeffSeq& U, int from, int to) {
  if (from > to) throw std::invalid_argument("change_basis: inverse direction not supported");
  if (U.basis_order != from) throw std::invalid_argument("change_basis: source order mismatch");
  CoeffSeq r = U;
  for (int k = from; k < to; ++k) r = change_once(r, k);
  return r;
}

CoeffSeq apply_S(const CoeffSeq& U) {
  if (U.basis_order != 0) throw std::invalid_argument("apply_S: Chebyshev input required");
  const int size = U.size() + 1;
  CoeffSeq r = like(U, size, parity_shift(U.parity, 1), 0);
  for (int n = 1; n < size; ++n) r[n] = (U.at(n - 1) - U.at(n + 1)) / Interval(2.0 * n);
  // Head fixes the value at -1 to zero: U_0 - U_1/2 + Σ_{n≥2} (-1)^{n+1} 2U_n/(n²-1).
  Interval head = U.at(0) - Interval(0.5) * U.at(1);
  for (int n = 2; n < U.size(); ++n) {
    Interval t = Interval(2.0) * U[n] / Interval(static_cast<double>(n) * n - 1.0);
    head = (n % 2) ? head + t : head - t;
  }
  r[0] = head;
  if (U.parity == Parity::even) r.parity = Parity::none;
  return r;
}

CoeffSeq apply_Si(const CoeffSeq& U, int i) {
  if (i < 1) throw std::invalid_argument("apply_Si: i >= 1 required");
  if (U.basis_order != 0) throw std::invalid_argument("apply_Si: Chebyshev input required");
  CoeffSeq r = apply_Ddag(apply_shift(change_basis(U, 0, i), i), i);
  r.parity = parity_shift(U.parity, i);
  r.trim();
  return r;
}

int BandedOp::bandwidth() const {
  switch (kind) {
    case BandKind::derivative: return 0;  // Σ^k𝒟_k is diagonal
    case BandKind::shift: return k;
    case BandKind::dagger: return 0;
    case BandKind::change: return l - k;  // Σ^{l-k}𝒞_{k,l}
    case BandKind::antideriv: return 1;   // away from the head row
    case BandKind::antideriv_i: return k;
  }
  return 0;
}

CoeffSeq BandedOp::apply(const CoeffSeq& U) const {
  switch (kind) {
    case BandKind::derivative: return apply_Dk(U, k);
    case BandKind::shift: return apply_shift(U, k);
    case BandKind::dagger: return apply_Ddag(U, k);
    case BandKind::change: return change_basis(U, k, l);
    case BandKind::antideriv: return apply_S(U);
    case BandKind::antideriv_i: return apply_Si(U, k);
  }
  throw std::logic_error("BandedOp: unknown kind");
}

Interval alpha_coeff(int j, int n) {
  if (j < 0 || n < 0) throw std::invalid_argument("alpha_coeff: negative index");
  if (j == 0) return Interval(1.0);
  // Per-j tables of α_{j,n}, grown on demand under a lock.
  static std::mutex mtx;
  static std::vector<std::vector<Interval>> table;
  static std::vector<Interval> running_gamma;  // gamma_ratio(j, last n)
  std::lock_guard<std::mutex> lock(mtx);
  if (static_cast<int>(table.size()) <= j) {
    table.resize(static_cast<size_t>(j + 1));
    running_gamma.resize(static_cast<size_t>(j + 1), Interval(1.0));
  }
  auto& t = table[static_cast<size_t>(j)];
  if (t.empty()) t.push_back(pow2(j - 1) * factorial(j));
  const Interval pref = pow2(j - 1) * factorial(j - 1);
  while (static_cast<int>(t.size()) <= n) {
    const int m = static_cast<int>(t.size());
    // gamma_ratio(j, m) built incrementally from the same rational factors.
    Interval& g = running_gamma[static_cast<size_t>(j)];
    g = g * Interval::frac(2.0 * j + m - 1, m);
    t.push_back(pref * Interval(static_cast<double>(m + j)) * g);
  }
  return t[static_cast<size_t>(n)];
}

Interval boundary_eval(const CoeffSeq& U, int j, int endpoint) {
  if (endpoint != 1 && endpoint != -1) throw std::invalid_argument("boundary_eval: endpoint must be +-1");
  if (j < 0) throw std::invalid_argument("boundary_eval: j >= 0 required");
  if (U.basis_order != 0) throw std::invalid_argument("boundary_eval: Chebyshev input required");
  if (j == 0) {
    Interval s(0.0);
    for (int n = 1; n < U.size(); ++n) s = (endpoint < 0 && (n % 2)) ? s - U[n] : s + U[n];
    return U.at(0) + Interval(2.0) * s;
  }
  Interval s(0.0);
  for (int n = 0; n + j < U.size(); ++n) {
    const Interval& u = U[n + j];
    if (u.lo == 0 && u.hi == 0) continue;
    Interval t = alpha_coeff(j, n) * u;
    s = (endpoint < 0 && (n % 2)) ? s - t : s + t;
  }
  return Interval(2.0) * s;
}

BoundarySpec BoundarySpec::dirichlet() {
  BoundarySpec b;
  b.m = 1;
  b.left = {{1.0, 0.0}};
  b.right = {{1.0, 0.0}};
  return b;
}

BoundarySpec BoundarySpec::neumann_odd_biharmonic() {
  BoundarySpec b;
  b.m = 2;
  b.left = {{0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}};
  b.right = {{0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}};
  return b;
}

BoundarySpec BoundarySpec::neumann_odd_laplacian() {
  BoundarySpec b;
  b.m = 1;
  b.left = {{0.0, 1.0}};
  b.right = {{0.0, 1.0}};
  return b;
}

void BoundarySpec::validate() const {
  if (m < 1) throw std::invalid_argument("BoundarySpec: m >= 1 required");
  if (static_cast<int>(left.size()) != m || static_cast<int>(right.size()) != m)
    throw std::invalid_argument("BoundarySpec: need exactly m left and m right rows");
  for (const auto* side : {&left, &right})
    for (const auto& row : *side)
      if (static_cast<int>(row.size()) != 2 * m)
        throw std::invalid_argument("BoundarySpec: each row needs 2m coefficients");
}

Interval BoundaryFunctionals::apply_row(int r, const CoeffSeq& U) const {
  const BoundaryRow& row = rows[static_cast<size_t>(r)];
  Interval s(0.0);
  for (int j = 0; j < static_cast<int>(row.weights.size()); ++j) {
    const double w = row.weights[static_cast<size_t>(j)];
    if (w == 0.0) continue;
    s += Interval(w) * boundary_eval(U, j, row.endpoint);
  }
  return s;
}

std::vector<Interval> BoundaryFunctionals::apply(const CoeffSeq& U) const {
  std::vector<Interval> out(rows.size());
  for (int r = 0; r < count(); ++r) out[static_cast<size_t>(r)] = apply_row(r, U);
  return out;
}

BoundaryFunctionals build_B(const BoundarySpec& spec, Parity parity) {
  spec.validate();
  BoundaryFunctionals b;
  b.m = spec.m;
  b.parity = parity;
  if (parity == Parity::none)
    for (const auto& w : spec.left) b.rows.push_back({-1, w});
  for (const auto& w : spec.right) b.rows.push_back({+1, w});
  return b;
}

}  // namespace chebcap
