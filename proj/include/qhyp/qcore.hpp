#pragma once

#include <cmath>
#include <complex>

#include "qhyp/errors.hpp"
#include "qhyp/lattice_function.hpp"
#include "qhyp/numeric.hpp"

namespace qhyp {

// (a; base)_k = prod_{i<k} (1 - a base^i), as an explicit product.
template <class Scalar, class Base>
Scalar qpoch(const Scalar& a, const Base& base, int k) {
  if (k < 0) throw DomainError("qpoch: k must be nonnegative");
  Scalar prod(1);
  Scalar term = a;
  for (int i = 0; i < k; ++i) {
    prod *= Scalar(1) - term;
    term *= base;
  }
  return prod;
}

// (a; base)_inf truncated at the first i with |a base^i| < tol. No tail
// correction; the neglected relative tail is O(tol / (1 - |base|)).
template <class Scalar, class Base>
Scalar qpoch_infinite(const Scalar& a, const Base& base,
                      const real_type_t<Scalar>& tol = default_tol<real_type_t<Scalar>>()) {
  using Real = real_type_t<Scalar>;
  if (!(abs_value(base) < Real(1))) throw DomainError("qpoch_infinite: |base| must be < 1");
  if (!(tol > Real(0))) throw DomainError("qpoch_infinite: tol must be positive");
  Scalar prod(1);
  Scalar term = a;
  while (abs_value(term) >= tol) {
    prod *= Scalar(1) - term;
    term *= base;
  }
  return prod;
}

// Gaussian binomial [a; b] at the given base, as a product of b ratios.
template <class Real>
Real qbinomial(int a, int b, const Real& base) {
  if (a < 0 || b < 0) throw DomainError("qbinomial: negative argument");
  if (b > a) throw DomainError("qbinomial: b > a");
  Real result(1);
  for (int i = 1; i <= b; ++i) {
    result *= (Real(1) - ipow(base, a - b + i)) / (Real(1) - ipow(base, i));
  }
  return result;
}

enum class StopRule { terminated, tolerance };

template <class Scalar>
struct SeriesResult {
  Scalar value;
  int terms = 0;
  StopRule stop = StopRule::terminated;
};

namespace detail {

template <class Scalar>
bool factor_vanishes(const Scalar& one_minus, const Scalar& product) {
  using Real = real_type_t<Scalar>;
  Real scale = abs_value(product);
  if (scale < Real(1)) scale = Real(1);
  return abs_value(one_minus) <= Real(8) * machine_eps<Real>() * scale;
}

}  // namespace detail

// 3phi2(a1, a2, a3; b1, 0; base, z). A numerator factor (1 - a_i base^k) that
// vanishes to rounding terminates the series exactly; otherwise summation stops
// once |term| < tol.
template <class Scalar>
SeriesResult<Scalar> phi32(const Scalar& a1, const Scalar& a2, const Scalar& a3, const Scalar& b1,
                           const Scalar& z, const Scalar& base, int max_terms = 1000,
                           const real_type_t<Scalar>& tol = default_tol<real_type_t<Scalar>>()) {
  if (max_terms < 1) throw DomainError("phi32: max_terms must be positive");
  SeriesResult<Scalar> out{Scalar(1), 1, StopRule::terminated};
  Scalar term(1);
  Scalar bk(1);  // base^k
  for (int k = 0; out.terms < max_terms; ++k) {
    const Scalar n1 = a1 * bk, n2 = a2 * bk, n3 = a3 * bk, d1 = b1 * bk;
    if (detail::factor_vanishes(Scalar(1) - n1, n1) || detail::factor_vanishes(Scalar(1) - n2, n2) ||
        detail::factor_vanishes(Scalar(1) - n3, n3)) {
      return out;
    }
    if (detail::factor_vanishes(Scalar(1) - d1, d1))
      throw DomainError("phi32: b1 hits base^{-j}, vanishing denominator");
    const Scalar bk1 = bk * base;
    term *= (Scalar(1) - n1) * (Scalar(1) - n2) * (Scalar(1) - n3) / ((Scalar(1) - bk1) * (Scalar(1) - d1)) * z;
    out.value += term;
    out.terms = k + 2;
    bk = bk1;
    if (abs_value(term) < tol) {
      out.stop = StopRule::tolerance;
      return out;
    }
  }
  throw ConvergenceError("phi32: max_terms reached before the tolerance");
}

// Terminating 3phi2(base^{-n}, alpha e^{it}, alpha e^{-it}; b1, 0; base, base)
// with z = cos t. The conjugate pair is combined as
// (alpha e^{it}, alpha e^{-it}; base)_k = prod (1 - 2 alpha z base^i + alpha^2 base^{2i}),
// so the sum is real and valid for any real z. Exactly n+1 terms.
template <class Real>
SeriesResult<Real> phi32_terminating_pair(int n, const Real& alpha, const Real& z, const Real& b1,
                                          const Real& base) {
  if (n < 0) throw DomainError("phi32_terminating_pair: n must be nonnegative");
  SeriesResult<Real> out{Real(1), n + 1, StopRule::terminated};
  Real term(1);
  Real bk(1);
  for (int k = 0; k < n; ++k) {
    const Real d1 = Real(1) - b1 * bk;
    if (d1 == Real(0)) throw DomainError("phi32_terminating_pair: vanishing denominator");
    const Real pair = Real(1) - 2 * alpha * z * bk + alpha * alpha * bk * bk;
    const Real bk1 = bk * base;
    term *= (Real(1) - ipow(base, k - n)) * pair * base / ((Real(1) - bk1) * d1);
    out.value += term;
    bk = bk1;
  }
  return out;
}

// Jackson integral with base q^{-2}: sum_j f(j) q^{-2j}.
template <class Scalar, class Real>
Scalar jackson_integral(const LatticeFunction<Scalar>& f, const Real& q) {
  Scalar sum(0);
  for (const auto& [j, v] : f.values()) sum += v * Scalar(ipow(Real(q), -2L * j));
  return sum;
}

// B-: (f(q^{-2}x) - f(x)) / (q^{-2}x - x), from the two values.
template <class Scalar, class Real>
Scalar bminus(const Scalar& f_x, const Scalar& f_up, const Real& x, const Real& q) {
  return (f_up - f_x) / Scalar(x / (q * q) - x);
}

// B+: (f(q^2 x) - f(x)) / (q^2 x - x), from the two values.
template <class Scalar, class Real>
Scalar bplus(const Scalar& f_x, const Scalar& f_down, const Real& x, const Real& q) {
  return (f_down - f_x) / Scalar(q * q * x - x);
}

template <class Scalar, class Real>
Scalar bminus(const LatticeFunction<Scalar>& f, int j, const Real& q) {
  if (j < 0) throw DomainError("bminus: negative lattice index");
  return bminus(f(j), f(j + 1), ipow(Real(q), -2L * j), Real(q));
}

// On the lattice, B+ at j = 0 would read f(q^2) which is off-lattice.
template <class Scalar, class Real>
Scalar bplus(const LatticeFunction<Scalar>& f, int j, const Real& q) {
  if (j < 0) throw DomainError("bplus: negative lattice index");
  if (j == 0) throw ContractViolation("bplus: j = 0 needs an off-lattice value");
  return bplus(f(j), f(j - 1), ipow(Real(q), -2L * j), Real(q));
}

}  // namespace qhyp
