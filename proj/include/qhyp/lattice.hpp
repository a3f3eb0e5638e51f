#pragma once

#include <cmath>
#include <cstdlib>

#include "qhyp/errors.hpp"
#include "qhyp/lattice_function.hpp"
#include "qhyp/numeric.hpp"
#include "qhyp/qcore.hpp"

namespace qhyp {

struct ModelParams {
  double q = 0.5;
  int n = 1;
  int m = 2;

  int N() const { return n + m; }

  static ModelParams make(double q, int n, int m) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("ModelParams: q must lie in (0,1)");
    if (n < 1) throw DomainError("ModelParams: n must be >= 1");
    if (m < 2) throw DomainError("ModelParams: m must be >= 2");
    return ModelParams{q, n, m};
  }
};

// Reduced labels (Lambda, Lambda') of an isotypic block.
struct Sector {
  int L = 0;
  int Lp = 0;

  bool realizable() const { return L >= 0 && Lp >= 0 && (L - Lp) % 2 == 0; }
  friend bool operator==(const Sector& a, const Sector& b) { return a.L == b.L && a.Lp == b.Lp; }
};

struct Quadruple {
  int k = 0;
  int l = 0;
  int kp = 0;
  int lp = 0;

  bool nonnegative() const { return k >= 0 && l >= 0 && kp >= 0 && lp >= 0; }
  bool isotypic() const { return nonnegative() && k + lp == l + kp; }
  Sector sector() const { return Sector{k + l, kp + lp}; }
  int s() const { return k + lp; }
};

namespace detail {

inline void check_sector(const Sector& s) {
  if (s.L < 0 || s.Lp < 0) throw DomainError("Sector: Lambda and Lambda' must be nonnegative");
}

inline void check_index(int j) {
  if (j < 0) throw DomainError("lattice index must be nonnegative");
}

}  // namespace detail

// rho_{L,L'}(q^{-2j}) = q^{-2j(L'+m-1)} (q^{-2j-2}; q^{-2})_{L+n-1}.
template <class Real = double>
Real weight_rho(const ModelParams& p, const Sector& s, int j) {
  detail::check_sector(s);
  detail::check_index(j);
  const Real q(p.q);
  const Real qm2 = Real(1) / (q * q);
  return ipow(q, -2L * j * (s.Lp + p.m - 1)) * qpoch(ipow(q, -2L * j - 2), qm2, s.L + p.n - 1);
}

// Normalized point mass of d nu at q^{-2j}; mass(0) = 1.
template <class Real = double>
Real measure_mass(const ModelParams& p, const Sector& s, int j) {
  const Real q(p.q);
  const Real qm2 = Real(1) / (q * q);
  const Real norm = qpoch(qm2, qm2, s.L + p.n - 1);
  return weight_rho<Real>(p, s, j) * ipow(q, -2L * j) / norm;
}

// ||f_j||^2 = q^{-2j(N-1+L+L')} (q^{2j+2}; q^2)_{L+n-1} / (q^2; q^2)_{L+n-1}.
template <class Real = double>
Real norm_f_squared(const ModelParams& p, const Sector& s, int j) {
  detail::check_sector(s);
  detail::check_index(j);
  const Real q(p.q);
  const Real q2 = q * q;
  const int K = s.L + p.n - 1;
  return ipow(q, -2L * j * (p.N() - 1 + s.L + s.Lp)) * qpoch(ipow(q, 2L * j + 2), q2, K) / qpoch(q2, q2, K);
}

template <class Scalar>
Scalar inner_product(const ModelParams& p, const Sector& s, const LatticeFunction<Scalar>& f,
                     const LatticeFunction<Scalar>& g) {
  using Real = real_type_t<Scalar>;
  Scalar sum(0);
  for (const auto& [j, v] : f.values()) {
    const Scalar w = g(j);
    if (w == Scalar(0)) continue;
    sum += conj_value(w) * v * Scalar(measure_mass<Real>(p, s, j));
  }
  return sum;
}

template <class Scalar = double>
LatticeFunction<Scalar> basis_f(int j) {
  detail::check_index(j);
  return LatticeFunction<Scalar>::indicator(j);
}

// e_j = f_j / ||f_j||, written with the closed-form normalizer.
template <class Scalar = double>
LatticeFunction<Scalar> basis_e(const ModelParams& p, const Sector& s, int j) {
  using Real = real_type_t<Scalar>;
  using std::sqrt;
  detail::check_sector(s);
  detail::check_index(j);
  const Real q(p.q);
  const Real q2 = q * q;
  const int K = s.L + p.n - 1;
  const Real c = ipow(q, long(j) * (p.N() - 1 + s.L + s.Lp)) *
                 sqrt(qpoch(q2, q2, K) / qpoch(ipow(q, 2L * j + 2), q2, K));
  return LatticeFunction<Scalar>::indicator(j, Scalar(c));
}

// C(k,l,k',l') of the highest-weight scalar product. The factor
// (q^{-2};q^{-2})_{m-1} enters by absolute value so that C rho > 0.
template <class Real = double>
Real constant_C(const ModelParams& p, const Quadruple& t) {
  if (!t.nonnegative()) throw DomainError("constant_C: quadruple entries must be nonnegative");
  const Real q(p.q);
  const Real q2 = q * q;
  const Real qm2 = Real(1) / q2;
  const int m = p.m;
  const Real sign = ((t.k + t.l) % 2 == 0) ? Real(1) : Real(-1);
  using std::abs;
  const Real const1 = abs(qpoch(qm2, qm2, m - 1));
  const Real power = ipow(q, long(m) * (m - 1) + 2L * (t.kp + t.lp) * (m - 1) - 2L * t.l * m);
  const Real plus_part =
      qpoch(q2, q2, t.kp) * qpoch(q2, q2, t.lp) / qpoch(q2, q2, t.kp + t.lp + m - 1);
  const Real minus_part =
      qpoch(qm2, qm2, t.k) * qpoch(qm2, qm2, t.l) / qpoch(qm2, qm2, t.k + t.l + p.n - 1);
  return sign * power * const1 * plus_part * minus_part;
}

// C(k,l,k',l') * sum_j conj(psi) phi rho_{k+l,k'+l'}(q^{-2j}) q^{-2j}.
template <class Scalar>
Scalar scalar_product_hwv(const ModelParams& p, const Quadruple& t, const LatticeFunction<Scalar>& phi,
                          const LatticeFunction<Scalar>& psi) {
  using Real = real_type_t<Scalar>;
  const Sector s = t.sector();
  const Real q(p.q);
  Scalar sum(0);
  for (const auto& [j, v] : phi.values()) {
    const Scalar w = psi(j);
    if (w == Scalar(0)) continue;
    sum += conj_value(w) * v * Scalar(weight_rho<Real>(p, s, j) * ipow(q, -2L * j));
  }
  return Scalar(constant_C<Real>(p, t)) * sum;
}

}  // namespace qhyp
