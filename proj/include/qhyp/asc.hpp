#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "qhyp/errors.hpp"
#include "qhyp/numeric.hpp"
#include "qhyp/qcore.hpp"

namespace qhyp {

// Al-Salam-Chihara parameters Q_k(z; a, b | base).
template <class Real = double>
struct AscParams {
  Real a;
  Real b;
  Real base;

  void validate() const {
    if (!(base > Real(0) && base < Real(1))) throw DomainError("AscParams: base must lie in (0,1)");
    if (!(a > Real(0))) throw DomainError("AscParams: a must be positive");
    if (!(b >= Real(0) && b < Real(1))) throw DomainError("AscParams: b must lie in [0,1)");
  }
};

// Q_0..Q_kmax by 2z Q_k = Q_{k+1} + (a+b) base^k Q_k + (1-base^k)(1-ab base^{k-1}) Q_{k-1}.
template <class Z, class Real>
std::vector<Z> asc_recurrence_values(int kmax, const Z& z, const AscParams<Real>& p) {
  if (kmax < 0) throw DomainError("asc_recurrence: k must be nonnegative");
  std::vector<Z> Q(kmax + 1);
  Q[0] = Z(1);
  Real bk(1);  // base^k
  Real bkm1 = Real(1) / p.base;
  for (int k = 0; k < kmax; ++k) {
    Z next = (Z(2) * z - Z((p.a + p.b) * bk)) * Q[k];
    if (k > 0) next -= Z((Real(1) - bk) * (Real(1) - p.a * p.b * bkm1)) * Q[k - 1];
    Q[k + 1] = next;
    bkm1 = bk;
    bk *= p.base;
  }
  return Q;
}

template <class Z, class Real>
Z asc_recurrence(int k, const Z& z, const AscParams<Real>& p) {
  return asc_recurrence_values(k, z, p)[k];
}

// Q_k = (ab; base)_k a^{-k} 3phi2(base^{-k}, a e^{it}, a e^{-it}; ab, 0; base, base), z = cos t,
// summed in the precision of Real. The terms grow like base^{-k^2/2}, so for
// double inputs prefer asc_hypergeometric_exact.
template <class Real>
Real asc_hypergeometric(int k, const Real& z, const AscParams<Real>& p) {
  const Real ab = p.a * p.b;
  return qpoch(ab, p.base, k) * ipow(p.a, -long(k)) * phi32_terminating_pair(k, p.a, z, ab, p.base).value;
}

// Same sum evaluated in MPFR at a precision chosen from the largest term; rounded to double.
double asc_hypergeometric_exact(int k, double z, const AscParams<double>& p);

// Working precision (bits) that keeps the terminating pair series exact to
// about 2^-guard relative to its largest term.
unsigned terminating_pair_bits(int n, double alpha, double z, double b1, double base, unsigned guard = 128);

namespace detail {

// Index k0 with a base^k0 = 1 (to 1e-12), or -1.
template <class Real>
int band_edge_index(const Real& a, const Real& base) {
  using std::abs;
  Real t = a;
  for (int k = 0; t > Real(0.5); ++k) {
    if (abs(t - Real(1)) <= Real(1e-12)) return k;
    t *= base;
  }
  return -1;
}

// h(z, alpha) = prod_i (1 - 2 alpha z base^i + alpha^2 base^{2i}), optionally
// omitting the factor i = skip.
template <class Real>
Real asc_h(const Real& z, const Real& alpha, const Real& base, int skip = -1) {
  using std::abs;
  const Real tol = default_tol<Real>();
  Real prod(1);
  Real t = alpha;
  for (int i = 0; abs(t) >= tol; ++i) {
    if (i != skip) prod *= Real(1) - 2 * t * z + t * t;
    t *= base;
  }
  return prod;
}

}  // namespace detail

// w(cos theta) = h(z,1) h(z,-1) h(z,sqrt base) h(z,-sqrt base) / (h(z,a) h(z,b)).
// At a band-edge coincidence a base^k0 = 1 the vanishing factors of h(z,1) and
// h(z,a) cancel and are both dropped.
template <class Real>
Real asc_weight(const Real& theta, const AscParams<Real>& p) {
  using std::cos;
  using std::sqrt;
  p.validate();
  const Real z = cos(theta);
  const Real r = sqrt(p.base);
  const int k0 = detail::band_edge_index(p.a, p.base);
  const Real num = detail::asc_h(z, Real(1), p.base, k0 >= 0 ? 0 : -1) * detail::asc_h(z, Real(-1), p.base) *
                   detail::asc_h(z, r, p.base) * detail::asc_h(z, Real(-r), p.base);
  const Real den = detail::asc_h(z, p.a, p.base, k0) * detail::asc_h(z, p.b, p.base);
  return num / den;
}

template <class Real = double>
struct DiscreteMass {
  int k = 0;
  Real z;
  Real mass;
};

// Measure as a trapezoid rule in theta on [0, pi] plus point masses.
template <class Real = double>
struct SpectralMeasure {
  std::vector<Real> theta;        // M+1 equispaced nodes
  std::vector<Real> quad_weight;  // trapezoid weights
  std::vector<Real> density;      // w(cos theta) / (2 pi), before normalization
  std::vector<DiscreteMass<Real>> discrete;
  Real normalization = Real(1);

  std::size_t node_count() const { return theta.size(); }
  std::size_t discrete_count() const { return discrete.size(); }

  Real continuous_weight(std::size_t i) const { return normalization * quad_weight[i] * density[i]; }
  Real discrete_weight(std::size_t k) const { return normalization * discrete[k].mass; }

  // Integral of f(z) against the measure.
  template <class F>
  Real integrate(F&& f) const {
    using std::cos;
    Real sum(0);
    for (std::size_t i = 0; i < theta.size(); ++i) sum += continuous_weight(i) * f(cos(theta[i]));
    for (std::size_t k = 0; k < discrete.size(); ++k) sum += discrete_weight(k) * f(discrete[k].z);
    return sum;
  }

  Real total_mass() const {
    return integrate([](const Real&) { return Real(1); });
  }
};

// Mass w_k at z_k = (a base^k + 1/(a base^k))/2.
template <class Real>
Real asc_discrete_mass(int k, const AscParams<Real>& p) {
  const Real a = p.a, b = p.b, q = p.base;
  const Real a2 = a * a;
  const Real lead = qpoch_infinite(Real(1) / a2, q) /
                    (qpoch_infinite(q, q) * qpoch_infinite(a * b, q) * qpoch_infinite(b / a, q));
  const Real den = (Real(1) - a2) * qpoch(q, q, k) * qpoch(q * a / b, q, k);
  if (den == Real(0)) throw DegenerateParameters("asc_discrete_mass: vanishing denominator");
  const Real body = (Real(1) - a2 * ipow(q, 2L * k)) * qpoch(a2, q, k) * qpoch(a * b, q, k) / den;
  return lead * body * ipow(q, -long(k) * k) * ipow(a * a2 * b, -long(k));
}

template <class Real>
std::vector<DiscreteMass<Real>> asc_discrete_part(const AscParams<Real>& p) {
  std::vector<DiscreteMass<Real>> out;
  Real t = p.a;
  for (int k = 0; t > Real(1) + Real(1e-12); ++k) {
    out.push_back({k, (t + Real(1) / t) / 2, asc_discrete_mass(k, p)});
    t *= p.base;
  }
  return out;
}

namespace detail {

template <class Real>
SpectralMeasure<Real> trapezoid_measure(const AscParams<Real>& p, int intervals) {
  const Real pi = boost::math::constants::pi<Real>();
  SpectralMeasure<Real> mu;
  mu.theta.resize(intervals + 1);
  mu.quad_weight.resize(intervals + 1);
  mu.density.resize(intervals + 1);
  const Real h = pi / intervals;
  for (int i = 0; i <= intervals; ++i) {
    mu.theta[i] = h * i;
    mu.quad_weight[i] = (i == 0 || i == intervals) ? h / 2 : h;
    mu.density[i] = asc_weight(mu.theta[i], p) / (2 * pi);
  }
  return mu;
}

template <class Real>
std::vector<Real> cosine_moments(const SpectralMeasure<Real>& mu, int max_degree) {
  using std::cos;
  std::vector<Real> out(max_degree + 1, Real(0));
  for (std::size_t i = 0; i < mu.theta.size(); ++i) {
    const Real w = mu.quad_weight[i] * mu.density[i];
    for (int d = 0; d <= max_degree; ++d) out[d] += w * cos(d * mu.theta[i]);
  }
  return out;
}

}  // namespace detail

// Orthogonality measure of Q_k(z; a, b | base). The trapezoid rule is refined
// by doubling until the cosine moments up to max_degree change by less than tol
// relative to the zeroth moment.
template <class Real>
SpectralMeasure<Real> asc_orthogonality_measure(const AscParams<Real>& p, int quad_nodes = 64,
                                                int max_degree = 40, double tol = 1e-11) {
  using std::abs;
  p.validate();
  if (quad_nodes < 16) throw DomainError("asc_orthogonality_measure: quad_nodes must be >= 16");
  int M = quad_nodes;
  SpectralMeasure<Real> mu = detail::trapezoid_measure(p, M);
  std::vector<Real> moments = detail::cosine_moments(mu, max_degree);
  for (M *= 2; M <= (1 << 16); M *= 2) {
    SpectralMeasure<Real> finer = detail::trapezoid_measure(p, M);
    std::vector<Real> fm = detail::cosine_moments(finer, max_degree);
    Real change(0);
    for (int d = 0; d <= max_degree; ++d) change = std::max(change, Real(abs(fm[d] - moments[d])));
    mu = std::move(finer);
    moments = std::move(fm);
    if (change < Real(tol) * abs(moments[0])) {
      mu.discrete = asc_discrete_part(p);
      return mu;
    }
  }
  throw ConvergenceError("asc_orthogonality_measure: quadrature did not converge");
}

// 1 / ((base^{i+1}; base)_inf (ab base^i; base)_inf)
template <class Real>
Real asc_norm_target(int i, const AscParams<Real>& p) {
  return Real(1) / (qpoch_infinite(ipow(p.base, i + 1), p.base) * qpoch_infinite(p.a * p.b * ipow(p.base, i), p.base));
}

// |int Q_i Q_j dmu - delta_ij h_i| / sqrt(h_i h_j)
template <class Real>
Real orthogonality_residual(int i, int j, const AscParams<Real>& p, const SpectralMeasure<Real>& mu) {
  using std::abs;
  using std::sqrt;
  if (i < 0 || j < 0 || i > 20 || j > 20) throw DomainError("orthogonality_residual: need 0 <= i, j <= 20");
  const int kmax = std::max(i, j);
  const Real integral = mu.integrate([&](const Real& z) {
    const auto Q = asc_recurrence_values(kmax, z, p);
    return Q[i] * Q[j];
  });
  const Real hi = asc_norm_target(i, p), hj = asc_norm_target(j, p);
  const Real target = (i == j) ? hi : Real(0);
  return abs(integral - target) / sqrt(hi * hj);
}

template <class Real>
Real orthogonality_residual(int i, int j, const AscParams<Real>& p, int quad_nodes = 64) {
  return orthogonality_residual(i, j, p, asc_orthogonality_measure(p, quad_nodes));
}

}  // namespace qhyp
