#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "qhyp/errors.hpp"
#include "qhyp/lattice.hpp"
#include "qhyp/numeric.hpp"
#include "qhyp/qcore.hpp"

namespace qhyp {

// Label of the Fock basis vector e(a_1, ..., a_{N-1}):
// a_1..a_n <= 0 and a_{n+1}..a_{N-1} >= 1.
struct FockIndex {
  std::vector<int> a;

  static FockIndex make(const ModelParams& p, std::vector<int> a) {
    if (static_cast<int>(a.size()) != p.N() - 1) throw DomainError("FockIndex: need N-1 entries");
    for (int i = 0; i < p.N() - 1; ++i) {
      if (i < p.n && a[i] > 0) throw DomainError("FockIndex: a_1..a_n must be <= 0");
      if (i >= p.n && a[i] < 1) throw DomainError("FockIndex: a_{n+1}..a_{N-1} must be >= 1");
    }
    return FockIndex{std::move(a)};
  }
};

namespace detail {

inline void require_oracle_n(const ModelParams& p) {
  if (p.n < 2) throw DomainError("Fock oracle: n = 1 is not supported (a_1 and a_n coincide)");
}

// (-1)^{k+l} q^{2ll' + 2k'l - 2k'l'}
template <class Real>
Real fock_prefactor(const ModelParams& p, const Quadruple& t) {
  const Real sign = ((t.k + t.l) % 2 == 0) ? Real(1) : Real(-1);
  return sign * ipow(Real(p.q), 2L * t.l * t.lp + 2L * t.kp * t.l - 2L * t.kp * t.lp);
}

// Part of the diagonal eigenvalue that depends on a_1..a_n (pointer to n entries),
// including conj(psi) phi read at lattice index j = -l - (a_1 + ... + a_n).
template <class Scalar>
Scalar fock_negative_factor(const ModelParams& p, const Quadruple& t, const LatticeFunction<Scalar>& phi,
                            const LatticeFunction<Scalar>& psi, const int* a) {
  using Real = real_type_t<Scalar>;
  const Real q(p.q);
  const Real q2 = q * q, qm2 = Real(1) / q2;
  long c = 0;
  for (int i = 0; i < p.n; ++i) c += a[i];
  const long j = -t.l - c;
  if (j < 0) return Scalar(0);
  const Scalar reads = conj_value(psi(static_cast<int>(j))) * phi(static_cast<int>(j));
  if (reads == Scalar(0)) return Scalar(0);
  const int an = a[p.n - 1];
  const Real f = qpoch(ipow(q, 2L * a[0] - 2), qm2, t.k) * qpoch(ipow(q, 2L * an), q2, t.l) *
                 ipow(q, -2L * t.l * an) * ipow(q, 2L * t.kp * c) * ipow(q, 2L * (t.l + t.lp) * c);
  return Scalar(f) * reads;
}

// Part depending on a_{n+1}..a_{N-1} (pointer to m-1 entries):
// (q^{2a_{n+1}-2}; q^{-2})_{l'} q^{2k' sum a}.
template <class Real>
Real fock_positive_factor(const ModelParams& p, const Quadruple& t, const int* a) {
  const Real q(p.q);
  long sum = 0;
  for (int i = 0; i < p.m - 1; ++i) sum += a[i];
  return qpoch(ipow(q, 2L * a[0] - 2), Real(1) / (q * q), t.lp) * ipow(q, 2L * t.kp * sum);
}

// q^{2 sum_i (N-i) a_i} over a block starting at 1-based position `first`.
template <class Real>
Real trace_weight(const ModelParams& p, const int* a, int first, int count) {
  long e = 0;
  for (int i = 0; i < count; ++i) e += long(p.N() - (first + i)) * a[i];
  return ipow(Real(p.q), 2 * e);
}

// Visits every tuple of `count` integers in [lo, hi] (odometer order).
inline void for_each_tuple(int count, int lo, int hi, const std::function<void(const int*)>& visit) {
  if (count == 0) {
    visit(nullptr);
    return;
  }
  if (hi < lo) return;
  std::vector<int> a(count, lo);
  while (true) {
    visit(a.data());
    int i = count - 1;
    while (i >= 0 && a[i] == hi) a[i--] = lo;
    if (i < 0) return;
    ++a[i];
  }
}

}  // namespace detail

// Eigenvalue of T(f_2^* f_1) on e(a_1, ..., a_{N-1}).
template <class Scalar>
Scalar diagonal_action(const ModelParams& p, const Quadruple& t, const LatticeFunction<Scalar>& phi,
                       const LatticeFunction<Scalar>& psi, const FockIndex& idx) {
  using Real = real_type_t<Scalar>;
  detail::require_oracle_n(p);
  if (!t.nonnegative()) throw DomainError("diagonal_action: quadruple entries must be nonnegative");
  if (static_cast<int>(idx.a.size()) != p.N() - 1) throw DomainError("diagonal_action: index length");
  return Scalar(detail::fock_prefactor<Real>(p, t)) * detail::fock_negative_factor(p, t, phi, psi, idx.a.data()) *
         Scalar(detail::fock_positive_factor<Real>(p, t, idx.a.data() + p.n));
}

template <class Scalar>
struct OracleResult {
  Scalar value;
  int depth = 0;
  double change = 0.0;  // relative change when the depth is doubled
};

namespace detail {

// Exact sum over a_1..a_n <= 0 of negative factor times trace weight; only
// tuples whose lattice read j = -l - sum a lands in the common support count.
template <class Scalar>
Scalar fock_negative_sum(const ModelParams& p, const Quadruple& t, const LatticeFunction<Scalar>& phi,
                         const LatticeFunction<Scalar>& psi) {
  using Real = real_type_t<Scalar>;
  if (phi.empty() || psi.empty()) return Scalar(0);
  const int jmax = std::min(phi.max_index(), psi.max_index());
  const int cmin = -t.l - jmax;
  Scalar sum(0);
  for_each_tuple(p.n, cmin, 0, [&](const int* a) {
    long c = 0;
    for (int i = 0; i < p.n; ++i) c += a[i];
    if (c < cmin) return;
    sum += fock_negative_factor(p, t, phi, psi, a) * Scalar(trace_weight<Real>(p, a, 1, p.n));
  });
  return sum;
}

// Sum of fock_positive_factor * trace_weight over [1, depth]^{m-1}. The summand is a product of
// one-index factors, so the block is a product of m-1 truncated one-dimensional sums.
template <class Real>
Real fock_positive_sum(const ModelParams& p, const Quadruple& t, int depth) {
  const Real q(p.q);
  const Real qm2 = Real(1) / (q * q);
  Real prod(1);
  for (int i = 0; i < p.m - 1; ++i) {
    const long w = t.kp + long(p.N() - (p.n + 1 + i));
    Real sum(0);
    for (int a = 1; a <= depth; ++a) {
      Real term = ipow(q, 2L * w * a);
      if (i == 0) term *= qpoch(ipow(q, 2L * a - 2), qm2, t.lp);
      sum += term;
    }
    prod *= sum;
  }
  return prod;
}

template <class Real>
Real fock_const1(const ModelParams& p) {
  using std::abs;
  const Real qm2 = Real(1) / (Real(p.q) * Real(p.q));
  return abs(qpoch(qm2, qm2, p.m - 1));
}

}  // namespace detail

// nu_q(psi^* phi) as the weighted trace const_1 Tr(T(.) T(x_2 ... x_N)), with
// const_1 = |(q^{-2}; q^{-2})_{m-1}|. The summand factors into an a_1..a_n part
// and an a_{n+1}..a_{N-1} part, so the sum is taken block by block. The first
// block is finite (bounded by the supports); the second is truncated at `depth`
// per index, doubled until the relative change is below tol.
template <class Scalar>
OracleResult<Scalar> invariant_integral_oracle(const ModelParams& p, const Quadruple& t,
                                               const LatticeFunction<Scalar>& phi, const LatticeFunction<Scalar>& psi,
                                               int depth = 40, double tol = 1e-12, int max_depth = 640) {
  using Real = real_type_t<Scalar>;
  using std::abs;
  detail::require_oracle_n(p);
  if (!t.nonnegative()) throw DomainError("invariant_integral_oracle: quadruple entries must be nonnegative");
  if (depth < 1) throw DomainError("invariant_integral_oracle: depth must be positive");
  const Scalar neg = detail::fock_negative_sum(p, t, phi, psi);
  const Real front = detail::fock_const1<Real>(p) * detail::fock_prefactor<Real>(p, t);
  Real pos = detail::fock_positive_sum<Real>(p, t, depth);
  for (int d = depth; d <= max_depth; d *= 2) {
    const Real finer = detail::fock_positive_sum<Real>(p, t, 2 * d);
    const Real change = abs(finer - pos) / std::max(abs(finer), Real(1e-300));
    if (change < Real(tol)) return {Scalar(front * pos) * neg, d, to_double(change)};
    pos = finer;
  }
  throw ConvergenceError("invariant_integral_oracle: depth doubling did not converge");
}

// Same trace as one nested enumeration over the whole truncated index set.
template <class Scalar>
Scalar invariant_integral_nested(const ModelParams& p, const Quadruple& t, const LatticeFunction<Scalar>& phi,
                                 const LatticeFunction<Scalar>& psi, int depth) {
  using Real = real_type_t<Scalar>;
  detail::require_oracle_n(p);
  if (phi.empty() || psi.empty()) return Scalar(0);
  const int cmin = -t.l - std::min(phi.max_index(), psi.max_index());
  const Real const1 = detail::fock_const1<Real>(p);
  Scalar sum(0);
  FockIndex idx{std::vector<int>(p.N() - 1)};
  detail::for_each_tuple(p.n, cmin, 0, [&](const int* neg) {
    std::copy(neg, neg + p.n, idx.a.begin());
    detail::for_each_tuple(p.m - 1, 1, depth, [&](const int* pos) {
      std::copy(pos, pos + p.m - 1, idx.a.begin() + p.n);
      sum += diagonal_action(p, t, phi, psi, idx) * Scalar(detail::trace_weight<Real>(p, idx.a.data(), 1, p.N() - 1));
    });
  });
  return Scalar(const1) * sum;
}

template <class Real>
struct IdentityPair {
  Real lhs;
  Real rhs;

  // |lhs - rhs| / max(1, |rhs|)
  double relative_error() const {
    using std::abs;
    const Real scale = std::max(Real(1), Real(abs(rhs)));
    return to_double(Real(abs(lhs - rhs) / scale));
  }
};

// Summation lemma, part 1. The lhs enumerates every composition of -t into n
// nonpositive parts.
template <class Real>
IdentityPair<Real> summation_identity_1(const Real& q, int n, int k, int l, int t) {
  if (n < 1 || k < 0 || l < 0 || t < 0) throw DomainError("summation_identity_1: invalid arguments");
  const Real q2 = q * q, qm2 = Real(1) / q2;
  Real lhs(0);
  detail::for_each_tuple(n, -t, 0, [&](const int* a) {
    long sum = 0, weight = 0;
    for (int i = 0; i < n; ++i) {
      sum += a[i];
      weight += long(n - 1 - i) * a[i];
    }
    if (sum != -t) return;
    const int an = a[n - 1];
    lhs += qpoch(ipow(q, 2L * a[0] - 2L * k), q2, k) * qpoch(ipow(q, 2L * an), q2, l) * ipow(q, -2L * l * an) *
           ipow(q, 2 * weight);
  });
  const Real rhs = qpoch(qm2, qm2, k) * qpoch(qm2, qm2, l) * ipow(q, 2L * l * t) *
                   qpoch(ipow(q, -2L * (t - l + 1)), qm2, k + l + n - 1) / qpoch(qm2, qm2, k + l + n - 1);
  return {lhs, rhs};
}

// Summation lemma, part 2, with each of the m-1 indices in [1, depth]. The lhs summand
// factors over the indices and is summed one index at a time.
template <class Real>
IdentityPair<Real> summation_identity_2(const Real& q, int m, int kp, int lp, int depth) {
  if (m < 2 || kp < 0 || lp < 0 || depth < 1) throw DomainError("summation_identity_2: invalid arguments");
  const Real q2 = q * q, qm2 = Real(1) / q2;
  Real lhs(1);
  for (int i = 0; i < m - 1; ++i) {
    Real sum(0);
    for (int a = 1; a <= depth; ++a) {
      Real term = ipow(q, 2L * (kp + m - 1 - i) * a);
      if (i == 0) term *= qpoch(ipow(q, 2L * a - 2), qm2, lp);
      sum += term;
    }
    lhs *= sum;
  }
  const Real rhs = ipow(q, long(m - 1) * (2 * kp + 2 * lp + m) + 2L * lp * kp) * qpoch(q2, q2, kp) *
                   qpoch(q2, q2, lp) / qpoch(q2, q2, kp + lp + m - 1);
  return {lhs, rhs};
}

// sum_{x+y=t} [k+x; k] [l+y; l] q^{-2x(l+1)} = [k+l+t+1; k+l+1], base q^{-2}.
template <class Real>
IdentityPair<Real> qbinomial_convolution(const Real& q, int k, int l, int t) {
  if (k < 0 || l < 0 || t < 0) throw DomainError("qbinomial_convolution: invalid arguments");
  const Real base = Real(1) / (q * q);
  Real lhs(0);
  for (int x = 0; x <= t; ++x)
    lhs += qbinomial(k + x, k, base) * qbinomial(l + t - x, l, base) * ipow(q, -2L * x * (l + 1));
  return {lhs, qbinomial(k + l + t + 1, k + l + 1, base)};
}

// sum_{a>=1} (q^{2a-2}; q^{-2})_x q^{2ya} = q^{2y(x+1)} (q^2; q^2)_x / (q^{2y}; q^2)_{x+1}.
template <class Real>
IdentityPair<Real> geometric_sum_identity(const Real& q, int x, int y, int depth) {
  if (x < 0 || y < 1 || depth < 1) throw DomainError("geometric_sum_identity: need x >= 0, y >= 1");
  const Real q2 = q * q, qm2 = Real(1) / q2;
  Real lhs(0);
  for (int a = 1; a <= depth; ++a) lhs += qpoch(ipow(q, 2L * a - 2), qm2, x) * ipow(q, 2L * y * a);
  const Real rhs = ipow(q, 2L * y * (x + 1)) * qpoch(q2, q2, x) / qpoch(ipow(q, 2L * y), q2, x + 1);
  return {lhs, rhs};
}

}  // namespace qhyp
