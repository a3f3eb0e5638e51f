#include <gtest/gtest.h>

#include <cmath>

#include "qhyp/laplace.hpp"
#include "qhyp/random.hpp"

using namespace qhyp;

namespace {

double max_abs_diff(const RealLatticeFunction& a, const RealLatticeFunction& b) {
  double w = 0.0;
  for (const auto& [j, v] : (a - b).values()) w = std::max(w, std::abs(v));
  return w;
}

double max_abs(const RealLatticeFunction& a) {
  double w = 0.0;
  for (const auto& [j, v] : a.values()) w = std::max(w, std::abs(v));
  return w;
}

}  // namespace

TEST(ThreeTerm, LinearityAndZero) {
  const auto p = ModelParams::make(0.5, 2, 2);
  EXPECT_TRUE(apply_three_term(p, Sector{0, 0}, RealLatticeFunction{}).empty());
  Lcg rng(3);
  const auto f = random_lattice_values(rng, 10), g = random_lattice_values(rng, 10);
  const auto lhs = apply_three_term(p, Sector{1, 1}, 2.0 * f + g);
  const auto rhs = 2.0 * apply_three_term(p, Sector{1, 1}, f) + apply_three_term(p, Sector{1, 1}, g);
  EXPECT_LE(max_abs_diff(lhs, rhs), 1e-12 * max_abs(rhs));
}

TEST(ThreeTerm, ActionOnF0MatchesCoefficients) {
  const auto p = ModelParams::make(0.5, 2, 3);
  const Sector s{1, 1};
  const auto Af = apply_three_term(p, s, basis_f<double>(0));
  // A f_0 = mid_0 f_0 + down_1 f_1: the row-j formula reads f(j+1), f(j), f(j-1)
  const auto c0 = three_term_coefficients<double>(p, s, 0);
  const auto c1 = three_term_coefficients<double>(p, s, 1);
  EXPECT_DOUBLE_EQ(Af(0), c0.mid);
  EXPECT_DOUBLE_EQ(Af(1), c1.down);
  EXPECT_EQ(Af.size(), 2u);
  // the Jacobi column is the same action in orthonormal coordinates
  const auto J = jacobi_matrix<double>(p, s, 4);
  EXPECT_NEAR(J.diagonal(0), c0.mid, 1e-14);
  const double e1 = std::sqrt(norm_f_squared<double>(p, s, 1));
  EXPECT_NEAR(J.offdiagonal(0), c1.down * e1, 1e-12 * std::abs(J.offdiagonal(0)));
}

TEST(DivergenceForm, EqualsThreeTerm) {
  Lcg rng(7);
  for (double q : {0.3, 0.5, 0.7})
    for (auto [n, m] : {std::pair{1, 2}, std::pair{2, 2}, std::pair{2, 3}}) {
      const auto p = ModelParams::make(q, n, m);
      for (int k = 0; k <= 3; ++k)
        for (int l = 0; l <= 3; ++l)
          for (int kp = 0; kp <= 3; ++kp)
            for (int lp = 0; lp <= 3; ++lp) {
              const Quadruple t{k, l, kp, lp};
              if (!t.isotypic()) continue;
              const auto f = random_lattice_values(rng, 12);
              const auto a = apply_divergence_form(p, t, f);
              const auto b = apply_three_term(p, t.sector(), f);
              EXPECT_LE(max_abs_diff(a, b), 1e-10 * max_abs(b));
            }
    }
}

TEST(DivergenceForm, SectorDependenceOnly) {
  const auto p = ModelParams::make(0.5, 2, 3);
  Lcg rng(11);
  const auto f = random_lattice_values(rng, 15);
  const auto a = apply_divergence_form(p, Quadruple{2, 1, 2, 1}, f);
  const auto b = apply_divergence_form(p, Quadruple{1, 2, 1, 2}, f);
  EXPECT_LE(max_abs_diff(a, b), 1e-11 * max_abs(a));
  EXPECT_THROW(apply_divergence_form(p, Quadruple{2, 1, 1, 2}, f), DomainError);
  EXPECT_TRUE(apply_divergence_form(p, Quadruple{}, RealLatticeFunction{}).empty());
}

TEST(Jacobi, Structure) {
  const auto p = ModelParams::make(0.5, 2, 2);
  const auto J = jacobi_matrix<double>(p, Sector{0, 0}, 300);
  const auto M = J.dense();
  EXPECT_EQ(M(0, 1), M(1, 0));
  for (Eigen::Index j = 0; j < J.offdiagonal.size(); ++j) EXPECT_GT(J.offdiagonal(j), 0.0);
  // diagonal tends to -q^{N+1}... the j -> infinity limit of the three-term mid coefficient
  const double q = p.q;
  const double limit = -q * (1 + std::pow(q, 2 * (p.N() - 1))) / laplace_denominator<double>(p);
  EXPECT_NEAR(J.diagonal(299), limit, 1e-12);
  EXPECT_THROW(jacobi_matrix<double>(p, Sector{0, 0}, 0), DomainError);
}

TEST(Eigenvalue, Formulas) {
  const auto p = ModelParams::make(0.5, 2, 2);
  const double q = 0.5, D = laplace_denominator<double>(p);
  EXPECT_NEAR(eigenvalue_lambda_l(p, 0), 0.0, 1e-15);
  EXPECT_NEAR(eigenvalue_lambda(p, SpectralPoint::continuous(M_PI / 2)), -0.68783068783068783, 1e-15);
  EXPECT_NEAR(eigenvalue_lambda_z(p, 0.0), -q * (1 + std::pow(q, 6)) / D, 1e-15);
  EXPECT_NEAR(eigenvalue_lambda_l(p, 1), -q * (1 - std::pow(q, -2)) * (1 - std::pow(q, 8)) / D, 1e-14);
  for (int l = 0; l <= 4; ++l) {
    const auto pt = SpectralPoint::from_u(SpectralPoint::Kind::generalized, l, std::pow(q, 2 * l + p.N() - 1));
    EXPECT_NEAR(eigenvalue_lambda(p, pt), eigenvalue_lambda_l(p, l), 1e-12 * std::max(1.0, std::abs(eigenvalue_lambda_l(p, l))));
  }
}

TEST(Jacobi, NormBoundAndTruncatedSpectrum) {
  const auto p = ModelParams::make(0.5, 2, 3);
  const Sector s{1, 1};
  const double b100 = operator_norm_bound(p, s, 100), b200 = operator_norm_bound(p, s, 200);
  EXPECT_LT(std::abs(b200 - b100), 1e-8);
  EXPECT_GE(b200, std::abs(jacobi_matrix<double>(p, s, 2).diagonal(0)));
  const auto ev = truncated_eigenvalues(p, s, 200);
  EXPECT_GE(ev.minCoeff(), -b200);
  EXPECT_LE(ev.maxCoeff(), b200);
  // band edges are approached like 1/size^2
  const auto ex = converged_extreme_eigenvalues(p, s, 200, 1e-6);
  EXPECT_NEAR(ex.min, eigenvalue_lambda_z(p, -1.0), 1e-5);
  EXPECT_NEAR(ex.max, eigenvalue_lambda_z(p, 1.0), 1e-5);
  EXPECT_GE(ex.min, eigenvalue_lambda_z(p, -1.0) - 1e-12);
  EXPECT_LE(ex.max, eigenvalue_lambda_z(p, 1.0) + 1e-12);
}
