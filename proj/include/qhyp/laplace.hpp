#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "qhyp/errors.hpp"
#include "qhyp/lattice.hpp"
#include "qhyp/numeric.hpp"
#include "qhyp/spectral_point.hpp"

namespace qhyp {

// (1 - q^2)(1 - q^{2(N-1)})
template <class Real = double>
Real laplace_denominator(const ModelParams& p) {
  const Real q(p.q);
  return (Real(1) - q * q) * (Real(1) - ipow(q, 2L * (p.N() - 1)));
}

template <class Real>
struct ThreeTermCoefficients {
  Real up;    // multiplies psi(j+1)
  Real mid;   // multiplies psi(j)
  Real down;  // multiplies psi(j-1); zero at j = 0
};

// Coefficients of A^{L,L'} at x = q^{-2j}, with the overall 1/x folded in.
template <class Real = double>
ThreeTermCoefficients<Real> three_term_coefficients(const ModelParams& p, const Sector& s, int j) {
  detail::check_sector(s);
  detail::check_index(j);
  const Real q(p.q);
  const int n = p.n, m = p.m, N = p.N();
  const Real pre = q / laplace_denominator<Real>(p);
  const Real y = ipow(q, 2L * j);  // 1/x
  ThreeTermCoefficients<Real> c;
  c.up = pre * ipow(q, -long(s.L + s.Lp)) * (Real(1) - ipow(q, 2L * (n + s.L)) * y);
  c.down = pre * ipow(q, 2L * N - 2 + s.L + s.Lp) * (Real(1) - y);
  c.mid = pre * (ipow(q, 2L * n + s.L - s.Lp) * (Real(1) + ipow(q, 2L * (m - 1 + s.Lp))) * y -
                 (Real(1) + ipow(q, 2L * (N - 1))));
  return c;
}

template <class Scalar>
LatticeFunction<Scalar> apply_three_term(const ModelParams& p, const Sector& s, const LatticeFunction<Scalar>& f) {
  using Real = real_type_t<Scalar>;
  if (f.empty()) return {};
  typename LatticeFunction<Scalar>::Map out;
  const int lo = std::max(0, f.min_index() - 1);
  const int hi = f.max_index() + 1;
  for (int j = lo; j <= hi; ++j) {
    const auto c = three_term_coefficients<Real>(p, s, j);
    Scalar v = Scalar(c.up) * f(j + 1) + Scalar(c.mid) * f(j);
    if (j > 0) v += Scalar(c.down) * f(j - 1);
    out.emplace(j, v);
  }
  return LatticeFunction<Scalar>(std::move(out));
}

// Divergence form A^{(k,l,k',l')} at lattice points j >= 1:
//   c0 phi - q^{-1-2k'} (1-q^2)^2 / (D rho) B+( rho x (q^{2(n+k)} - x q^{-2l}) B- phi ),
//   c0 = q^{1-2s} (1-q^{2s}) (1-q^{2(N-1+s)}) / D,  s = k + l'.
// At j = 0 B+ would need the off-lattice point q^2; that value is taken from the
// three-term form, whose coefficient of psi(q^2 x) vanishes there.
template <class Scalar>
LatticeFunction<Scalar> apply_divergence_form(const ModelParams& p, const Quadruple& t,
                                              const LatticeFunction<Scalar>& f) {
  using Real = real_type_t<Scalar>;
  if (!t.isotypic()) throw DomainError("apply_divergence_form: quadruple violates k+l' = l+k'");
  if (f.empty()) return {};
  const Sector sec = t.sector();
  const Real q(p.q);
  const Real q2 = q * q;
  const int N = p.N();
  const int s = t.s();
  const int K = sec.L + p.n - 1;
  const Real D = laplace_denominator<Real>(p);
  const Real c0 = ipow(q, 1L - 2L * s) * (Real(1) - ipow(q, 2L * s)) * (Real(1) - ipow(q, 2L * (N - 1 + s))) / D;
  const Real c1 = ipow(q, -1L - 2L * t.kp) * (Real(1) - q2) * (Real(1) - q2) / D;
  const Real alpha = ipow(q, 2L * (p.n + t.k));
  const Real beta = ipow(q, -2L * t.l);

  auto x_at = [&](int i) { return ipow(q, -2L * i); };
  // x (alpha - beta x) (B- phi)(x) at lattice point i
  auto flux = [&](int i) {
    const Real xi = x_at(i);
    return Scalar(xi * (alpha - beta * xi)) * bminus(f(i), f(i + 1), xi, q);
  };
  // rho(q^{-2(j-1)}) / rho(q^{-2j}), factor by factor
  auto rho_ratio = [&](int j) {
    const Real xj = x_at(j);
    Real r = ipow(q, 2L * (sec.Lp + p.m - 1));
    for (int i = 0; i < K; ++i) r *= (Real(1) - ipow(q, -2L * i) * xj) / (Real(1) - ipow(q, -2L - 2L * i) * xj);
    return r;
  };

  typename LatticeFunction<Scalar>::Map out;
  const int lo = std::max(0, f.min_index() - 1);
  const int hi = f.max_index() + 1;
  for (int j = lo; j <= hi; ++j) {
    if (j == 0) {
      const auto c = three_term_coefficients<Real>(p, sec, 0);
      out.emplace(0, Scalar(c.up) * f(1) + Scalar(c.mid) * f(0));
      continue;
    }
    const Real xj = x_at(j), xprev = x_at(j - 1);
    const Scalar bplus_over_rho = (Scalar(rho_ratio(j)) * flux(j - 1) - flux(j)) / Scalar(xprev - xj);
    out.emplace(j, Scalar(c0) * f(j) - Scalar(c1) * bplus_over_rho);
  }
  return LatticeFunction<Scalar>(std::move(out));
}

// Symmetric tridiagonal matrix of A^{L,L'} in the orthonormal basis e_j.
template <class Real = double>
struct JacobiMatrix {
  using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

  Vector diagonal;
  Vector offdiagonal;  // coupling j <-> j+1

  Eigen::Index size() const { return diagonal.size(); }

  Matrix dense() const {
    const Eigen::Index n = size();
    Matrix M = Matrix::Zero(n, n);
    M.diagonal() = diagonal;
    if (n > 1) {
      M.diagonal(1) = offdiagonal;
      M.diagonal(-1) = offdiagonal;
    }
    return M;
  }
};

template <class Real = double>
JacobiMatrix<Real> jacobi_matrix(const ModelParams& p, const Sector& s, int size) {
  using std::sqrt;
  detail::check_sector(s);
  if (size < 1) throw DomainError("jacobi_matrix: size must be >= 1");
  const Real q(p.q);
  const int n = p.n, N = p.N();
  const Real D = laplace_denominator<Real>(p);
  const Real qN = ipow(q, N);
  JacobiMatrix<Real> J;
  J.diagonal.resize(size);
  J.offdiagonal.resize(size - 1);
  for (int j = 0; j < size; ++j) {
    J.diagonal(j) = qN *
                    (ipow(q, 2L * j + (N - 1) + s.L + s.Lp) + ipow(q, 2L * j + 2 * n - (N - 1) + s.L - s.Lp) -
                     ipow(q, N - 1) - ipow(q, 1 - N)) /
                    D;
    if (j + 1 < size) {
      J.offdiagonal(j) =
          qN * sqrt((Real(1) - ipow(q, 2L * j + 2)) * (Real(1) - ipow(q, 2L * j + 2 * n + 2 * s.L))) / D;
    }
  }
  return J;
}

// lambda(z) = (2 z q^N - q (1 + q^{2(N-1)})) / D
inline double eigenvalue_lambda_z(const ModelParams& p, double z) {
  const double q = p.q;
  return (2.0 * z * std::pow(q, p.N()) - q * (1.0 + std::pow(q, 2.0 * (p.N() - 1)))) /
         laplace_denominator<double>(p);
}

inline double eigenvalue_lambda(const ModelParams& p, const SpectralPoint& point) {
  return eigenvalue_lambda_z(p, point.z);
}

// Lemma form: lambda(l) = -q (1 - q^{-2l}) (1 - q^{2(l+N-1)}) / D
inline double eigenvalue_lambda_l(const ModelParams& p, double l) {
  const double q = p.q;
  return -q * (1.0 - std::pow(q, -2.0 * l)) * (1.0 - std::pow(q, 2.0 * (l + p.N() - 1))) /
         laplace_denominator<double>(p);
}

// Max absolute row sum of the truncated Jacobi matrix.
template <class Real = double>
Real operator_norm_bound(const ModelParams& p, const Sector& s, int size) {
  using std::abs;
  if (size < 2) throw DomainError("operator_norm_bound: size must be >= 2");
  const auto J = jacobi_matrix<Real>(p, s, size);
  Real best(0);
  for (int j = 0; j < size; ++j) {
    Real row = abs(J.diagonal(j));
    if (j > 0) row += abs(J.offdiagonal(j - 1));
    if (j + 1 < size) row += abs(J.offdiagonal(j));
    best = std::max(best, row);
  }
  return best;
}

inline Eigen::VectorXd truncated_eigenvalues(const ModelParams& p, const Sector& s, int size) {
  const auto J = jacobi_matrix<double>(p, s, size);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(J.diagonal, J.offdiagonal, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("truncated_eigenvalues: eigensolver failed");
  return solver.eigenvalues();
}

struct ExtremeEigenvalues {
  double min = 0.0;
  double max = 0.0;
  int size = 0;
  double shift = 0.0;  // change against the half-size truncation
};

// Doubles the truncation until both extreme eigenvalues move by less than tol.
inline ExtremeEigenvalues converged_extreme_eigenvalues(const ModelParams& p, const Sector& s, int size = 400,
                                                        double tol = 1e-8, int max_size = 12800) {
  if (size < 2) throw DomainError("converged_extreme_eigenvalues: size must be >= 2");
  Eigen::VectorXd prev = truncated_eigenvalues(p, s, size);
  for (int n = 2 * size; n <= max_size; n *= 2) {
    Eigen::VectorXd cur = truncated_eigenvalues(p, s, n);
    const double shift = std::max(std::abs(cur(0) - prev(0)), std::abs(cur(cur.size() - 1) - prev(prev.size() - 1)));
    if (shift < tol) return {cur(0), cur(cur.size() - 1), n, shift};
    prev = std::move(cur);
  }
  throw ConvergenceError("converged_extreme_eigenvalues: no convergence up to max_size");
}

}  // namespace qhyp
