#include <gtest/gtest.h>

#include <cmath>

#include "tailforge/validate.hpp"

using namespace tailforge;

namespace {

double choose(int n, int k) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)); }

// direct sum over k >= k0 of C(n,k) p^k (1-p)^(n-k)
double binom_sum(int n, double p, int k0) {
  double s = 0;
  for (int k = std::max(k0, 0); k <= n; ++k) s += choose(n, k) * std::pow(p, k) * std::pow(1 - p, n - k);
  return s;
}

}  // namespace

TEST(IncrementLawTest, Validation) {
  EXPECT_THROW(IncrementLaw({1.0, -1.0}, {0.3, 0.7}), DomainError);
  EXPECT_THROW(IncrementLaw({1.0}, {0.5, 0.5}), DomainError);
  EXPECT_THROW(IncrementLaw({0.0}, {1.0}), DomainError);
  IncrementLaw l = TwoPointIncrement{2.0, 0.2}.law();
  EXPECT_NEAR(l.moment(1), 0.0, 1e-15);
  EXPECT_NEAR(l.max_abs(), 2.0, 0);
  EXPECT_NEAR(l.variance(), 0.2 * 4 + 0.8 * 0.25, 1e-15);
  EXPECT_THROW((TwoPointIncrement{1.0, 0.6}.law()), DomainError);
}

TEST(ExactTail, SinglePath) {
  TailResult one = exact_tail_dp(symmetric_pm_one(), {10, 10.0, Sidedness::one_sided});
  EXPECT_TRUE(one.exact_lattice);
  EXPECT_DOUBLE_EQ(one.probability, std::pow(2.0, -10));
  TailResult two = exact_tail_dp(symmetric_pm_one(), {10, 10.0, Sidedness::two_sided});
  EXPECT_DOUBLE_EQ(two.probability, std::pow(2.0, -9));
}

TEST(ExactTail, ZeroThresholdSymmetric) {
  for (int n : {1, 2, 9, 10}) EXPECT_GE(exact_tail_dp(symmetric_pm_one(), {n, 0.0}).probability, 0.5);
}

TEST(ExactTail, CenteredBernoulliIsBinomial) {
  for (double p : {0.1, 0.3, 0.5})
    for (int k : {0, 5, 8, 13, 20}) {
      // S_n >= k - n p  <=>  Bin(n, p) >= k
      TailResult r = exact_tail_dp(centered_bernoulli(p), {20, k - 20 * p});
      EXPECT_NEAR(r.probability, binom_sum(20, p, k), 1e-13) << p << " " << k;
      EXPECT_NEAR(binomial_tail(20, p, k), binom_sum(20, p, k), 1e-13);
    }
}

TEST(ExactTail, IrrationalSupportUsesBins) {
  IncrementLaw l({std::sqrt(2.0), -std::sqrt(2.0)}, {0.5, 0.5});
  TailResult r = exact_tail_dp(l, {12, 6 * std::sqrt(2.0)});
  EXPECT_FALSE(r.exact_lattice);
  EXPECT_NEAR(r.probability, binom_sum(12, 0.5, 9), 1e-10);
}

TEST(ExactTail, InfeasibleSizeReported) {
  IncrementLaw l({std::sqrt(2.0), -std::sqrt(3.0) + 0.0, std::sqrt(3.0) - std::sqrt(2.0)},
                 {1.0 / 3, 1.0 / 3, 1.0 / 3});
  EXPECT_THROW(exact_tail_dp(l, {4000, 1.0}), DomainError);
}

TEST(Sandwich, ReferenceCase) {
  Sandwich s = types_sandwich_check(0.3, 20, 0.5);
  EXPECT_NEAR(s.exact, binom_sum(20, 0.3, 10), 1e-15);
  EXPECT_NEAR(s.exact, 0.04796, 5e-6);
  EXPECT_TRUE(s.holds());
  EXPECT_DOUBLE_EQ(types_sandwich_check(0.3, 20, 0.3).upper, 1.0);
  EXPECT_TRUE(types_sandwich_check(0.5, 40, 0.75).holds());
}

TEST(Sandwich, AllLatticePoints) {
  for (double p : {0.1, 0.3, 0.5})
    for (int n = 1; n <= 64; ++n)
      for (int k = static_cast<int>(std::ceil(n * p)); k <= n; ++k) {
        Sandwich s = types_sandwich_check(p, n, static_cast<double>(k) / n);
        EXPECT_TRUE(s.holds()) << p << " " << n << " " << k;
      }
}

TEST(Sandwich, ExponentConverges) {
  double prev = 1e9;
  for (int n : {16, 64, 256, 1024}) {
    Sandwich s = types_sandwich_check(0.3, n, 0.5);
    double gap = -std::log(s.exact) / n - binary_divergence(0.5, 0.3);
    EXPECT_GE(gap, 0.0);
    EXPECT_LT(gap, std::log(n + 1.0) / n);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
}

TEST(Wilson, KnownInterval) {
  WilsonInterval w = wilson_interval(50, 100);
  double z = 1.959963984540054, half = z / (1 + z * z / 100) * std::sqrt(0.25 / 100 + z * z / 40000);
  EXPECT_NEAR(w.lo, 0.5 - half, 1e-15);
  EXPECT_NEAR(w.hi, 0.5 + half, 1e-15);
  EXPECT_THROW(wilson_interval(0, 0), DomainError);
}

TEST(MonteCarlo, DeterministicAcrossThreadCounts) {
  TailQuery q{30, 4.0, Sidedness::two_sided};
  MonteCarloResult a = monte_carlo_tail(symmetric_pm_one(), q, 5000, 99, 1);
  MonteCarloResult b = monte_carlo_tail(symmetric_pm_one(), q, 5000, 99, 4);
  EXPECT_EQ(a.hits, b.hits);
  MonteCarloResult c = monte_carlo_tail(symmetric_pm_one(), q, 5000, 100, 2);
  EXPECT_NE(a.hits, c.hits);
}

TEST(MonteCarlo, AgreesWithExact) {
  TailQuery q{100, 1.0, Sidedness::two_sided};  // 1 - P(S = 0)
  double exact = exact_tail_dp(symmetric_pm_one(), q).probability;
  EXPECT_NEAR(exact, 1 - choose(100, 50) * std::pow(0.5, 100), 1e-12);
  MonteCarloResult mc = monte_carlo_tail(symmetric_pm_one(), q, 20000, 5);
  double w = mc.ci.hi - mc.ci.lo;
  EXPECT_LT(std::abs(mc.estimate - exact), 3 * w);
}

TEST(MonteCarlo, RejectsTooFewTrials) {
  EXPECT_THROW(monte_carlo_tail(symmetric_pm_one(), {5, 1.0}, 0, 1), DomainError);
  EXPECT_THROW(monte_carlo_tail(symmetric_pm_one(), {5, 1.0}, 50, 1), DomainError);
}

TEST(Validity, ExactNeverExceedsBounds) {
  std::vector<IncrementLaw> laws{symmetric_pm_one(), centered_bernoulli(0.2), TwoPointIncrement{1.0, 0.05}.law(),
                                 IncrementLaw({2.0, 0.0, -2.0}, {0.1, 0.8, 0.1})};
  for (const auto& law : laws)
    for (int n : {4, 16, 32})
      for (double frac : {0.1, 0.3, 0.6, 0.9})
        for (Sidedness s : {Sidedness::one_sided, Sidedness::two_sided}) {
          TailQuery q{n, frac * n * law.max_abs(), s};
          double exact = exact_tail_dp(law, q).probability;
          for (const auto& b : analytic_tail_bounds(law, q))
            EXPECT_LE(exact, b.value * (1 + 1e-12)) << b.name << " n=" << n << " frac=" << frac;
        }
}

TEST(Example3, SymmetricCase) {
  Example3Result r = example3_comparison(0.5, 1.0, 1.0, 6);
  EXPECT_NEAR(r.thm2, std::pow(2.0, -6), 1e-15);
  EXPECT_NEAR(r.exact, std::pow(2.0, -6), 1e-15);
  EXPECT_NEAR(r.azuma, std::exp(-3.0), 1e-15);
}

TEST(Example3, SmallEpsilonSeparation) {
  Example3Result r = example3_comparison(0.01, 1.0, 0.5, 20);
  EXPECT_LT(r.thm2, 1e-3 * r.azuma);
  EXPECT_LE(r.exact, r.thm2);
  double prev = 1;
  for (double e : {0.1, 0.01, 0.001}) {
    double t = example3_comparison(e, 1.0, 0.5, 20).thm2;
    EXPECT_LT(t, prev);
    prev = t;
  }
  EXPECT_NEAR(example3_comparison(0.001, 1.0, 0.5, 20).azuma, std::exp(-2.5), 1e-15);
}

TEST(Example3, ZeroDeviation) {
  Example3Result r = example3_comparison(0.2, 1.0, 0.0, 5);
  EXPECT_EQ(r.azuma, 1.0);
  EXPECT_EQ(r.thm2, 1.0);
}
