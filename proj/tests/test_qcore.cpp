#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <complex>

#include "qhyp/qcore.hpp"

using namespace qhyp;

TEST(QPoch, FiniteProducts) {
  EXPECT_EQ(qpoch(0.7, 0.5, 0), 1.0);
  EXPECT_EQ(qpoch(1.0, 0.25, 3), 0.0);
  EXPECT_DOUBLE_EQ(qpoch(0.5, 0.25, 2), 0.4375);
  EXPECT_THROW(qpoch(0.5, 0.5, -1), DomainError);
}

TEST(QPoch, InfiniteProduct) {
  EXPECT_EQ(qpoch_infinite(0.0, 0.5, 1e-15), 1.0);
  EXPECT_EQ(qpoch_infinite(1.0, 0.5, 1e-15), 0.0);
  double partial = 1.0;
  for (int i = 0; i < 200; ++i) partial *= 1.0 - 0.5 * std::pow(0.5, i);
  EXPECT_NEAR(qpoch_infinite(0.5, 0.5, 1e-15), partial, 1e-12);
  // 50-digit reference
  EXPECT_NEAR(qpoch_infinite(0.5, 0.5, 1e-17), 0.28878809508660242, 1e-15);
  EXPECT_THROW(qpoch_infinite(0.5, 1.0), DomainError);
}

TEST(QPoch, ComplexArgument) {
  const std::complex<double> a(0.3, 0.4);
  const auto v = qpoch(a, 0.5, 3);
  const auto expect = (1.0 - a) * (1.0 - 0.5 * a) * (1.0 - 0.25 * a);
  EXPECT_NEAR(std::abs(v - expect), 0.0, 1e-15);
}

TEST(QBinomial, TrivialCases) {
  const double base = 1.0 / (0.5 * 0.5);
  EXPECT_DOUBLE_EQ(qbinomial(5, 0, base), 1.0);
  EXPECT_DOUBLE_EQ(qbinomial(5, 5, base), 1.0);
  EXPECT_THROW(qbinomial(2, 3, 0.5), DomainError);
}

// sum over b-subsets of {0..a-1} of base^{inversions}
double subset_oracle(int a, int b, double base) {
  double sum = 0.0;
  for (unsigned mask = 0; mask < (1u << a); ++mask) {
    if (std::popcount(mask) != b) continue;
    int inv = 0;
    for (int i = 0; i < a; ++i)
      for (int j = i + 1; j < a; ++j)
        if ((mask >> i & 1u) && !(mask >> j & 1u)) ++inv;
    sum += std::pow(base, inv);
  }
  return sum;
}

TEST(QBinomial, SubsetEnumeration) {
  EXPECT_DOUBLE_EQ(qbinomial(4, 2, 0.25), 1.39453125);
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= a; ++b) EXPECT_NEAR(qbinomial(a, b, 0.3), subset_oracle(a, b, 0.3), 1e-13) << a << "," << b;
}

TEST(QBinomial, PascalRule) {
  const double x = 0.6;
  for (int a = 1; a <= 10; ++a)
    for (int b = 1; b < a; ++b)
      EXPECT_NEAR(qbinomial(a, b, x), qbinomial(a - 1, b - 1, x) + std::pow(x, b) * qbinomial(a - 1, b, x), 1e-12);
}

TEST(Phi32, FirstNumeratorOne) {
  const auto r = phi32(1.0, 0.3, 0.2, 0.1, 0.7, 0.5);
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.terms, 1);
}

TEST(Phi32, TerminatesAfterTwoTerms) {
  const double base = 0.5;
  const auto r = phi32(1.0 / base, 0.01, 0.01, 0.01, base, base);
  EXPECT_EQ(r.terms, 2);
  EXPECT_EQ(r.stop, StopRule::terminated);
  const double t1 = (1 - 1 / base) * 0.99 * 0.99 / ((1 - base) * 0.99) * base;
  EXPECT_NEAR(r.value, 1.0 + t1, 1e-15);
}

TEST(Phi32, EigenfunctionInstanceMatchesDirectSum) {
  // 3phi2(q^{-2j}, b e^{it}, b e^{-it}; beta, 0; q^2, q^2) at n = m = 2, sector (0,0)
  const double q = 0.5, P = q * q, b = std::pow(q, 3), beta = std::pow(q, 4), t = 0.9;
  const std::complex<double> u = std::polar(1.0, t);
  for (int j = 0; j <= 8; ++j) {
    const std::complex<double> a1(std::pow(P, -j), 0.0);
    const auto series = phi32<std::complex<double>>(a1, b * u, b / u, beta, P, P);
    std::complex<double> direct(0.0), term(1.0);
    double top = 0.0;  // the sum cancels down from its largest term
    for (int k = 0; k <= j; ++k) {
      direct += term;
      top = std::max(top, std::abs(term));
      term *= (1.0 - a1 * std::pow(P, k)) * (1.0 - b * u * std::pow(P, k)) * (1.0 - b / u * std::pow(P, k)) /
              ((1.0 - std::pow(P, k + 1)) * (1.0 - beta * std::pow(P, k))) * P;
    }
    EXPECT_LE(std::abs(series.value - direct), 1e-14 * top) << j;
    const auto pair = phi32_terminating_pair(j, b, std::cos(t), beta, P);
    EXPECT_LE(std::abs(pair.value - direct.real()), 1e-14 * top) << j;
  }
}

TEST(Phi32, VanishingDenominatorAndNonConvergence) {
  EXPECT_THROW(phi32(0.3, 0.2, 0.1, 1.0, 0.5, 0.5), DomainError);
  EXPECT_THROW(phi32(0.3, 0.2, 0.1, 0.4, 0.999, 0.999, 5), ConvergenceError);
}

TEST(Jackson, IndicatorSums) {
  const double q = 0.5;
  EXPECT_DOUBLE_EQ(jackson_integral(RealLatticeFunction::indicator(0), q), 1.0);
  EXPECT_DOUBLE_EQ(jackson_integral(RealLatticeFunction::indicator(2), q), std::pow(q, -4));
  const RealLatticeFunction f({{0, 1.0}, {1, 1.0}, {2, 1.0}});
  EXPECT_DOUBLE_EQ(jackson_integral(f, q), 1 + std::pow(q, -2) + std::pow(q, -4));
}

TEST(DifferenceOperators, PolynomialsOnLattice) {
  const double q = 0.5, x = std::pow(q, -2);
  EXPECT_EQ(bminus(3.0, 3.0, x, q), 0.0);
  EXPECT_EQ(bplus(3.0, 3.0, x, q), 0.0);
  EXPECT_DOUBLE_EQ(bminus(x, x / (q * q), x, q), 1.0);
  EXPECT_DOUBLE_EQ(bplus(x, x * q * q, x, q), 1.0);
  const double x2 = x / (q * q);
  EXPECT_DOUBLE_EQ(bminus(x * x, x2 * x2, x, q), (x2 * x2 - x * x) / (x2 - x));
}

TEST(DifferenceOperators, LatticeOverloads) {
  const double q = 0.5;
  const RealLatticeFunction f({{0, 1.0}, {1, 4.0}, {2, 16.0}});
  EXPECT_DOUBLE_EQ(bminus(f, 1, q), (16.0 - 4.0) / (std::pow(q, -4) - std::pow(q, -2)));
  EXPECT_DOUBLE_EQ(bplus(f, 1, q), (1.0 - 4.0) / (1.0 - std::pow(q, -2)));
  EXPECT_THROW(bplus(f, 0, q), ContractViolation);
  EXPECT_THROW(bminus(f, -1, q), DomainError);
}

TEST(LatticeFunction, Algebra) {
  RealLatticeFunction f({{0, 1.0}, {3, 2.0}});
  RealLatticeFunction g({{3, -2.0}, {4, 1.0}});
  const auto h = f + g;
  EXPECT_EQ(h.size(), 2u);
  EXPECT_EQ(h(3), 0.0);
  EXPECT_EQ(h(4), 1.0);
  EXPECT_EQ((2.0 * f)(3), 4.0);
  EXPECT_TRUE((f - f).empty());
  EXPECT_THROW(RealLatticeFunction::indicator(-1), DomainError);
  EXPECT_EQ(f.cast<std::complex<double>>()(3), std::complex<double>(2.0, 0.0));
}
