#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tailforge/specfun.hpp"

using namespace tailforge;

namespace {
const double kE = std::exp(1.0);

// y e^y = w by bisection on a monotone piece
double bisect(double w, double lo, double hi) {
  bool increasing = lo * std::exp(lo) < hi * std::exp(hi);
  for (int i = 0; i < 400; ++i) {
    double mid = 0.5 * (lo + hi);
    double f = mid * std::exp(mid) - w;
    if ((f < 0) == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double residual(double y, double w) { return std::abs(y * std::exp(y) - w) / std::max(1.0, std::abs(w)); }
}  // namespace

TEST(LambertW0, KnownValues) {
  EXPECT_EQ(lambert_w0(0.0), 0.0);
  EXPECT_NEAR(lambert_w0(kE), 1.0, 1e-15);
  EXPECT_NEAR(lambert_w0(-1.0 / kE), -1.0, 1e-7);
  EXPECT_NEAR(lambert_w0(1.0), 0.5671432904097838, 1e-15);  // omega constant
}

TEST(LambertW0, AgreesWithBisection) {
  for (double w : {-0.36, -0.3, -0.1, 1e-8, 0.5, 2.0, 10.0, 1e3, 1e6, 1e100}) {
    double hi = std::max(1.0, std::log(w + 2.0) + 1.0);
    EXPECT_NEAR(lambert_w0(w), bisect(w, -1.0, hi), 1e-12 * std::max(1.0, hi)) << w;
  }
}

TEST(LambertWm1, AgreesWithBisection) {
  for (double w : {-0.3678, -0.36, -0.2, -0.01, -1e-6, -1e-100}) {
    double lo = std::log(-w) - 2.0 * std::log(-std::log(-w) + 1.0) - 5.0;
    double y = bisect(w, std::min(lo, -1.0 - 1e-9), -1.0);
    EXPECT_NEAR(lambert_wm1(w), y, 1e-10 * std::max(1.0, std::abs(y))) << w;
  }
  EXPECT_NEAR(lambert_wm1(-1.0 / kE), -1.0, 1e-7);
}

TEST(Lambert, DomainErrors) {
  EXPECT_THROW(lambert_w0(-0.5), DomainError);
  EXPECT_THROW(lambert_wm1(0.1), DomainError);
  EXPECT_THROW(lambert_wm1(-0.5), DomainError);
}

TEST(Lambert, ResidualsOnRandomPoints) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    double w0arg = -1.0 / kE + std::pow(10.0, -12 + 20 * u(gen));
    double wm1arg = -std::pow(10.0, -300 * u(gen)) / kE;
    EXPECT_LE(residual(lambert_w0(w0arg), w0arg), 1e-12);
    EXPECT_LE(residual(lambert_wm1(wm1arg), wm1arg), 1e-12);
  }
}

TEST(Lambert, LogDomainVariants) {
  // W0(e^L) solves y + ln y = L
  for (double L : {-700.0, -50.0, 0.0, 3.0, 800.0, 1e5}) {
    double y = lambert_w0_exp(L);
    EXPECT_NEAR(y + std::log(y), L, 1e-12 * std::max(1.0, std::abs(L))) << L;
  }
  // W_{-1}(-e^L) solves y + ln(-y) = L with y <= -1
  for (double L : {-1e5, -800.0, -50.0, -1.5}) {
    double y = lambert_wm1_negexp(L);
    EXPECT_LE(y, -1.0);
    EXPECT_NEAR(y + std::log(-y), L, 1e-12 * std::max(1.0, std::abs(L))) << L;
  }
  EXPECT_NEAR(lambert_w0_exp(1.0), 1.0, 1e-15);
}
