#include <gtest/gtest.h>

#include <cmath>

#include "tailforge/specfun.hpp"

using namespace tailforge;

namespace {
// plain definition, no cancellation handling
double naive_binary_kl(double p, double q) {
  double s = 0.0;
  if (p > 0) s += p * std::log(p / q);
  if (p < 1) s += (1 - p) * std::log((1 - p) / (1 - q));
  return s;
}
}  // namespace

TEST(ExtendedReal, FiniteRejectsNonFinite) {
  EXPECT_THROW(ExtendedReal::finite(std::nan("")), NumericalError);
  EXPECT_THROW(ExtendedReal::finite(kInf), NumericalError);
  EXPECT_TRUE(ExtendedReal::infinity().is_infinite());
  EXPECT_LT(ExtendedReal::finite(3.0), ExtendedReal::infinity());
}

TEST(FinitePmf, Validation) {
  EXPECT_THROW(FinitePmf(std::vector<double>{}), DomainError);
  EXPECT_THROW(FinitePmf({0.5, 0.6}), DomainError);
  EXPECT_THROW(FinitePmf({1.1, -0.1}), DomainError);
  FinitePmf p({0.25, 0.75});
  EXPECT_EQ(p.size(), 2u);
  EXPECT_TRUE(p.strictly_positive());
  EXPECT_FALSE(FinitePmf({1.0, 0.0}).strictly_positive());
}

TEST(Kernel, MatchesDirectFormula) {
  for (double u : {-0.999, -0.5, -0.05, -1e-4, 1e-6, 0.01, 0.09, 0.11, 0.5, 3.0, 100.0}) {
    double direct = (1 + u) * std::log1p(u) - u;
    EXPECT_NEAR(xlogx_kernel(u), direct, 1e-15 + 1e-12 * std::abs(direct)) << u;
  }
  EXPECT_DOUBLE_EQ(xlogx_kernel(-1.0), 1.0);
}

TEST(Kernel, SmallArgumentSeries) {
  // k(u) = sum_{j>=2} (-u)^j / (j (j - 1))
  for (double u : {1e-3, -2e-3, 5e-5}) {
    double s = 0, pw = -u;
    for (int j = 2; j < 12; ++j) {
      pw *= -u;
      s += pw / (j * (j - 1.0));
    }
    EXPECT_NEAR(xlogx_kernel(u), s, 1e-15 * u * u);
  }
}

TEST(Divergence, BinaryAgreesWithNaive) {
  for (double p : {0.0, 0.1, 0.3, 0.5, 0.77, 1.0})
    for (double q : {0.05, 0.2, 0.5, 0.9}) EXPECT_NEAR(binary_divergence(p, q), naive_binary_kl(p, q), 1e-13);
}

TEST(Divergence, ZeroOnlyOnDiagonal) {
  EXPECT_EQ(binary_divergence(0.3, 0.3), 0.0);
  EXPECT_GT(binary_divergence(0.3000001, 0.3), 0.0);
}

TEST(Divergence, KlInfiniteOnSupportMismatch) {
  EXPECT_TRUE(kl_divergence(FinitePmf({0.5, 0.5}), FinitePmf({1.0, 0.0})).is_infinite());
  EXPECT_NEAR(kl_divergence(FinitePmf({0.4, 0.6}), FinitePmf({0.6, 0.4})).value(), 0.2 * std::log(1.5), 1e-15);
}

TEST(Entropy, Binary) {
  EXPECT_NEAR(binary_entropy(0.5), 1.0, 1e-15);
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.11), (-0.11 * std::log(0.11) - 0.89 * std::log(0.89)) / std::log(2.0), 1e-15);
}

TEST(FDelta, EndpointsAndSeries) {
  EXPECT_EQ(f_delta(0.0).value(), 0.0);
  EXPECT_NEAR(f_delta(1.0).value(), std::log(2.0), 1e-15);
  EXPECT_TRUE(f_delta(1.5).is_infinite());
  // f(d) = sum d^{2k}/(2k(2k-1))
  for (double d : {0.01, 0.2, 0.6, 0.95}) {
    double s = 0.0;
    for (int k = 1; k < 4000; ++k) s += std::pow(d, 2 * k) / (2.0 * k * (2 * k - 1));
    EXPECT_NEAR(f_delta(d).value(), s, 1e-13) << d;
    EXPECT_NEAR(f_delta_series(d, 4000), s, 1e-13);
  }
}

TEST(FDelta, ExceedsQuadratic) {
  for (int i = 1; i <= 100; ++i) {
    double d = i / 100.0;
    EXPECT_GT(f_delta(d).value(), d * d / 2);
  }
}

TEST(BigB, LimitAndMonotone) {
  EXPECT_EQ(big_b_at_zero(), 1.0);
  EXPECT_NEAR(big_b(1e-9), 1.0, 1e-8);
  double prev = 1.0;
  for (double u = 0.1; u < 10; u += 0.1) {
    double b = big_b(u);
    EXPECT_LT(b, prev);
    EXPECT_NEAR(b, 2 * ((1 + u) * std::log1p(u) - u) / (u * u), 1e-12);
    prev = b;
  }
}

TEST(PhiM, SeriesMatchesDirect) {
  // phi_m(y) = m!/y^m (e^y - sum_{j<m} y^j/j!)
  for (int m : {2, 4, 6})
    for (double y : {-3.0, -0.5, 0.3, 1.9, 2.1, 5.0}) {
      double tail = std::exp(y), term = 1.0, fact = 1.0;
      for (int j = 0; j < m; ++j) {
        tail -= term;
        term *= y / (j + 1);
        fact *= (j + 1);
      }
      double direct = fact * tail / std::pow(y, m);
      EXPECT_NEAR(phi_m(m, y), direct, 1e-9 * std::abs(direct)) << m << " " << y;
    }
  EXPECT_EQ(phi_m(4, 0.0), 1.0);
}

TEST(QFunction, EnvelopeBracketsErfc) {
  for (double x : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    QEnvelope e = q_function_envelope(x);
    double q = 0.5 * std::erfc(x / std::sqrt(2.0));
    EXPECT_LE(e.lower, q);
    EXPECT_GE(e.upper, q);
    EXPECT_NEAR(q_function(x), q, 1e-15 + 1e-12 * q);
  }
}

TEST(LogExpm1, StableAcrossRange) {
  EXPECT_NEAR(log_expm1(1e-10), std::log(1e-10), 1e-9);
  EXPECT_NEAR(log_expm1(1.0), std::log(std::exp(1.0) - 1), 1e-15);
  EXPECT_NEAR(log_expm1(800.0), 800.0, 1e-12);
}

TEST(Clamp, SnapsNearBoundary) {
  EXPECT_EQ(clamp_to_domain(1.0 + 5e-13, 0.0, 1.0), 1.0);
  EXPECT_EQ(clamp_to_domain(-5e-13, 0.0, 1.0), 0.0);
  EXPECT_EQ(clamp_to_domain(1.1, 0.0, 1.0), 1.1);  // left for the caller to reject
}
