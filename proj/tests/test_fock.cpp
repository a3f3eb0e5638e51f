#include <gtest/gtest.h>

#include <cmath>

#include "qhyp/checks.hpp"
#include "qhyp/fock.hpp"

using namespace qhyp;

namespace {

RealLatticeFunction f(int j) { return RealLatticeFunction::indicator(j); }

}  // namespace

TEST(FockIndex, Validation) {
  const auto p = ModelParams::make(0.5, 2, 2);
  EXPECT_NO_THROW(FockIndex::make(p, {0, -1, 1}));
  EXPECT_THROW(FockIndex::make(p, {0, 1, 1}), DomainError);
  EXPECT_THROW(FockIndex::make(p, {0, 0, 0}), DomainError);
  EXPECT_THROW(FockIndex::make(p, {0, 0}), DomainError);
}

TEST(DiagonalAction, SpecialIndices) {
  const auto p = ModelParams::make(0.5, 2, 2);
  // a_1 + a_2 = 0 reads phi, psi at j = 0; the positive block contributes q^{2 a_3}
  EXPECT_NEAR(diagonal_action(p, Quadruple{}, f(0), f(0), FockIndex::make(p, {0, 0, 1})), 1.0, 1e-15);
  // a_n = 0 with l >= 1 kills (q^{2 a_n}; q^2)_l
  EXPECT_EQ(diagonal_action(p, Quadruple{0, 1, 1, 0}, f(1), f(1), FockIndex::make(p, {0, 0, 2})), 0.0);
  EXPECT_THROW(diagonal_action(ModelParams::make(0.5, 1, 2), Quadruple{}, f(0), f(0), FockIndex{{0, 1}}), DomainError);
}

TEST(Oracle, Normalization) {
  for (double q : {0.3, 0.5, 0.7})
    for (auto [n, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 4}})
      EXPECT_NEAR(invariant_integral_oracle(ModelParams::make(q, n, m), Quadruple{}, f(0), f(0)).value, 1.0, 1e-12);
}

TEST(Oracle, DisjointSupports) {
  const auto p = ModelParams::make(0.5, 2, 3);
  EXPECT_NEAR(invariant_integral_oracle(p, Quadruple{}, f(0), f(2)).value, 0.0, 1e-12);
  EXPECT_EQ(scalar_product_hwv(p, Quadruple{1, 1, 1, 1}, f(0), f(1)), 0.0);
}

TEST(Oracle, ClosedForm) {
  for (double q : {0.4, 0.6})
    for (auto [n, m] : {std::pair{2, 2}, std::pair{2, 3}}) {
      const auto p = ModelParams::make(q, n, m);
      for (const Quadruple t : {Quadruple{1, 0, 0, 1}, Quadruple{1, 1, 1, 1}, Quadruple{2, 1, 2, 1}, Quadruple{1, 2, 1, 2}})
        for (int j = 0; j <= 2; ++j) {
          const auto r = checks::oracle_comparison(p, t, f(j), f(j));
          EXPECT_LT(r.rel_err, 1e-9) << t.k << t.l << t.kp << t.lp << " j=" << j;
        }
    }
}

TEST(Oracle, NestedEnumerationAgrees) {
  const auto p = ModelParams::make(0.5, 2, 3);
  const RealLatticeFunction g({{0, 1.0}, {1, -0.5}, {2, 0.25}});
  for (const Quadruple t : {Quadruple{}, Quadruple{1, 0, 0, 1}, Quadruple{0, 1, 1, 0}, Quadruple{2, 1, 2, 1}}) {
    const double fact = invariant_integral_oracle(p, t, g, g, 40, 1e-14).value;
    const double nested = invariant_integral_nested(p, t, g, g, 60);
    EXPECT_NEAR(fact / nested, 1.0, 1e-12);
  }
}

TEST(Oracle, Positivity) {
  // C(0,0,0,0) carries the sign of (q^{-2}; q^{-2})_{n-1}, as does rho; the product is positive
  for (int n = 2; n <= 4; ++n) {
    const auto p = ModelParams::make(0.5, n, 2);
    EXPECT_GT(invariant_integral_oracle(p, Quadruple{}, f(1), f(1)).value, 0.0);
    EXPECT_GT(scalar_product_hwv(p, Quadruple{}, f(1), f(1)), 0.0);
  }
}

TEST(Identity1, TrivialCases) {
  ScopedPrecision guard(320);
  const HighPrec q("0.5");
  const HighPrec qm2 = 1 / (q * q);
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= 3; ++k) {
      const auto r = summation_identity_1(q, n, k, 0, 0);
      EXPECT_LT(to_double(HighPrec(abs(r.lhs - qpoch(qm2, qm2, k)))), 1e-60);
      EXPECT_LT(r.relative_error(), 1e-60);
      for (int l = 1; l <= 3; ++l) {
        const auto z = summation_identity_1(q, n, k, l, 0);
        EXPECT_EQ(z.lhs, 0);
        EXPECT_LT(to_double(HighPrec(abs(z.rhs))), 1e-60);
      }
    }
  EXPECT_LT(summation_identity_1(q, 3, 2, 1, 2).relative_error(), 1e-60);
}

TEST(Identity1, FailsForNEqualsOne) {
  // a_1 and a_n coincide when n = 1; the identity needs n >= 2 once k, l >= 1 and t >= l
  ScopedPrecision guard(320);
  const HighPrec q("0.5");
  EXPECT_GT(summation_identity_1(q, 1, 1, 1, 1).relative_error(), 1e-3);
  EXPECT_LT(summation_identity_1(q, 1, 2, 3, 2).relative_error(), 1e-60);
  EXPECT_LT(summation_identity_1(q, 1, 0, 3, 4).relative_error(), 1e-60);
}

TEST(Identity2, GeometricAndTruncated) {
  const double q = 0.5;
  const auto r = summation_identity_2(q, 2, 0, 0, 200);
  EXPECT_NEAR(r.lhs, q * q / (1 - q * q), 1e-15);
  EXPECT_LT(r.relative_error(), 1e-14);
  EXPECT_LT(summation_identity_2(q, 3, 1, 1, 60).relative_error(), 1e-12);
}

TEST(QBinomialConvolution, Cases) {
  const double q = 0.5;
  EXPECT_NEAR(qbinomial_convolution(q, 3, 2, 0).lhs, 1.0, 1e-15);
  const auto g = qbinomial_convolution(q, 0, 0, 4);
  double s = 0.0;
  for (int x = 0; x <= 4; ++x) s += std::pow(q, -2.0 * x);
  EXPECT_NEAR(g.lhs / s, 1.0, 1e-14);
  EXPECT_LT(g.relative_error(), 1e-12);
  EXPECT_LT(qbinomial_convolution(q, 2, 3, 4).relative_error(), 1e-12);
}

TEST(GeometricSum, Cases) {
  const double q = 0.5;
  for (int y = 1; y <= 3; ++y) {
    const auto r = geometric_sum_identity(q, 0, y, 200);
    EXPECT_NEAR(r.lhs, std::pow(q, 2 * y) / (1 - std::pow(q, 2 * y)), 1e-15);
  }
  EXPECT_LT(geometric_sum_identity(q, 2, 3, 80).relative_error(), 1e-12);
  EXPECT_THROW(geometric_sum_identity(q, 0, 0, 10), DomainError);
}
