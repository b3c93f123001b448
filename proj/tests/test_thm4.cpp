#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tailforge/bounds.hpp"

using namespace tailforge;

namespace {

// delta x - ln(1 + sum_{l=2}^{m-1} (g_l - g_m) x^l/l! + g_m (e^x - 1 - x)), written out directly
double objective(const std::vector<double>& g, double delta, double x) {
  int m = static_cast<int>(g.size()) + 1;
  double gm = g.back(), s = 1.0, fact = 1.0;
  for (int l = 2; l < m; ++l) {
    fact *= l;
    s += (g[l - 2] - gm) * std::pow(x, l) / fact;
  }
  s += gm * (std::expm1(x) - x);
  return delta * x - std::log(s);
}

double brute_sup(const std::vector<double>& g, double delta, double hi) {
  double best = 0.0, arg = 0.0;
  const int n = 20000;
  for (int i = 1; i <= n; ++i) {
    double x = hi * i / n, v = objective(g, delta, x);
    if (v > best) best = v, arg = x;
  }
  double a = std::max(0.0, arg - hi / n), b = arg + hi / n;
  for (int i = 0; i < 200; ++i) {
    double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
    if (objective(g, delta, m1) < objective(g, delta, m2))
      a = m1;
    else
      b = m2;
  }
  return std::max(best, objective(g, delta, 0.5 * (a + b)));
}

}  // namespace

TEST(Thm4, ObjectiveMatchesDirectFormula) {
  MomentProfile p({0.4, 0.1, 0.2});
  for (double x : {0.0, 0.3, 2.0, 10.0}) EXPECT_NEAR(thm4_objective(p, 0.3, x), objective({0.4, 0.1, 0.2}, 0.3, x), 1e-12);
}

TEST(Thm4, ObjectiveStableForLargeArgument) {
  MomentProfile p({0.4, 0.1, 0.2});
  double x = 2000.0;
  // ln(g_m e^x (1 + tiny)) = ln g_m + x
  EXPECT_NEAR(thm4_objective(p, 0.5, x), 0.5 * x - (std::log(0.2) + x), 1e-9);
}

TEST(Thm4, AgreesWithBruteForceSupremum) {
  std::vector<std::vector<double>> profiles{{0.3}, {0.25, 0.05, 0.1}, {0.5, 0.0, 0.3, 0.1, 0.25}, {0.05, 0.01, 0.02}};
  for (const auto& g : profiles)
    for (double d : {0.05, 0.3, 0.7, 0.95}) {
      ExponentValue e = thm4_exponent(MomentProfile(g), d);
      double ref = brute_sup(g, d, 200.0);
      EXPECT_NEAR(e.value(), ref, 1e-8 * std::max(1.0, ref)) << g.size() << " " << d;
      EXPECT_FALSE(e.hit_ceiling);
    }
}

TEST(Thm4, InteriorSupremumAtUnitDeviation) {
  // negative cubic term: the sup is attained near x = 4.84, above the large-x limit
  ExponentValue e = thm4_exponent(MomentProfile({0.3, 0.1, 0.2}), 1.0);
  EXPECT_FALSE(e.hit_ceiling);
  EXPECT_NEAR(e.value(), brute_sup({0.3, 0.1, 0.2}, 1.0, 200.0), 1e-8);
  EXPECT_GT(e.value(), -std::log(0.2));
}

TEST(Thm4, ZeroDeviationIsZero) { EXPECT_EQ(thm4_exponent(MomentProfile({0.3, 0.1, 0.2}), 0.0).value(), 0.0); }

TEST(Thm4, UnboundedSupremumFlagsCeiling) {
  // at delta = 1 with m = 4 and g_2 >= g_3 >= g_4 the objective increases to -ln g_4
  ExponentValue e = thm4_exponent(MomentProfile({0.3, 0.25, 0.2}), 1.0);
  EXPECT_TRUE(e.hit_ceiling);
  EXPECT_NEAR(e.value(), -std::log(0.2), 1e-6);
}

TEST(Cor4, AgreesWithGoldenSection) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.001, 1.0);
  for (int i = 0; i < 300; ++i) {
    double g = u(gen), d = u(gen);
    ExponentValue c = cor4_exponent(g, d), t = thm4_exponent(MomentProfile({g}), d);
    EXPECT_NEAR(c.value(), t.value(), 1e-9 * std::max(1.0, t.value())) << g << " " << d;
  }
}

TEST(Cor4, ArgminIsStationary) {
  for (double g : {0.1, 0.5, 0.9})
    for (double d : {0.2, 0.6}) {
      double x = cor4_argmin(g, d), h = 1e-5;
      double deriv = (objective({g}, d, x + h) - objective({g}, d, x - h)) / (2 * h);
      EXPECT_NEAR(deriv, 0.0, 1e-7);
    }
}

TEST(Cor4, UnitDeviationClosedForm) {
  for (double g : {0.1, 0.5}) {
    double a = 1 / g;
    EXPECT_NEAR(cor4_exponent(g, 1.0).value(), a - std::log(g) - std::log(std::expm1(a)), 1e-12);
  }
}

TEST(Cor6, MatchesCor4AtSecondOrder) {
  for (double g : {0.05, 0.3, 0.8})
    for (double d : {0.1, 0.5, 0.9}) {
      Cor6Result r = cor6_suboptimal(MomentProfile({g}), d);
      EXPECT_FALSE(r.fallback);
      EXPECT_NEAR(r.x, cor4_argmin(g, d), 1e-10);
    }
}

TEST(Cor6, NeverBeatsTheOptimum) {
  std::vector<double> g{0.25, 0.05, 0.1, 0.02, 0.04};
  for (double d : {0.1, 0.4, 0.8}) {
    Cor6Result r = cor6_suboptimal(MomentProfile(g), d);
    double opt = thm4_exponent(MomentProfile(g), d).value();
    EXPECT_LE(r.exponent.value(), opt + 1e-12);
    EXPECT_GE(r.exponent.value(), 0.0);
  }
}

TEST(E2E4, ReportsBoth) {
  MomentProfile p({0.25, 0.02, 0.05});
  E2E4Report r = compare_e2_e4(p, 0.25, 0.4);
  EXPECT_NEAR(r.e2.value(), thm2_exponent(0.25, 0.4).value(), 1e-15);
  EXPECT_EQ(r.e4_beats_e2, r.e4.value() > r.e2.value());
  EXPECT_THROW(compare_e2_e4(p, 0.3, 0.4), DomainError);
}

TEST(MomentProfileTest, Validation) {
  EXPECT_THROW(MomentProfile({}), DomainError);
  EXPECT_THROW(MomentProfile({0.2, 0.1}), DomainError);
  EXPECT_THROW(MomentProfile({0.2, 0.1, 0.0}), DomainError);
  MomentProfile p({0.4, 0.1, 0.2, 0.0, 0.1});
  EXPECT_EQ(p.m(), 6);
  EXPECT_EQ(p.truncated(4).m(), 4);
  EXPECT_EQ(p.gamma(4), 0.2);
}
