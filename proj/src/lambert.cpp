#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tailforge/specfun.hpp"

namespace tailforge {
namespace {

constexpr double kInvE = 1.0 / std::numbers::e;
constexpr double kTol = 1e-14;
constexpr int kMaxIter = 50;

// Series about the branch point in p = +-sqrt(2(e w + 1)); the sign of p
// selects W0 (+) or W_{-1} (-).
double branch_series(double p) {
  return -1.0 + p * (1.0 + p * (-1.0 / 3 + p * (11.0 / 72 + p * (-43.0 / 540 + p * (769.0 / 17280 - p * 221.0 / 8505)))));
}

double halley(double w, double x) {
  for (int it = 0; it < kMaxIter; ++it) {
    double ex = std::exp(x);
    double f = x * ex - w;
    double fp = ex * (x + 1.0);
    if (f == 0.0 || fp == 0.0) return x;
    // near the branch point the step stalls at rounding level before kTol
    if (std::abs(f) <= 4 * std::numeric_limits<double>::epsilon() * std::max(std::abs(w), std::abs(x * ex))) return x;
    double step = f / (fp - (x + 2.0) * f / (2.0 * (x + 1.0)));
    double next = x - step;
    if (std::abs(next - x) <= kTol * (1.0 + std::abs(next))) return next;
    x = next;
  }
  throw NumericalError("Lambert W: Halley iteration did not converge");
}

// Newton on y + ln|y| = L; used when e^L is not representable.
double log_newton(double L, double y) {
  for (int it = 0; it < kMaxIter; ++it) {
    double g = y + std::log(std::abs(y)) - L;
    double next = y - g / (1.0 + 1.0 / y);
    if (std::abs(next - y) <= kTol * (1.0 + std::abs(next))) return next;
    y = next;
  }
  throw NumericalError("Lambert W: log-domain Newton did not converge");
}

double branch_p(double w) { return std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * w + 1.0))); }

}  // namespace

double lambert_w0(double w) {
  if (std::isnan(w) || w < -kInvE - kBoundaryEps) throw DomainError("lambert_w0: argument below -1/e");
  if (w <= -kInvE) return -1.0;
  if (w == 0.0) return 0.0;
  if (w < -0.25) {
    double p = branch_p(w);
    if (p < 1e-3) return branch_series(p);
    return halley(w, branch_series(p));
  }
  double x0;
  if (w < 3.0) {
    x0 = std::log1p(w);
  } else {
    double l1 = std::log(w), l2 = std::log(l1);
    x0 = l1 - l2 + l2 / l1;
  }
  return halley(w, x0);
}

double lambert_wm1(double w) {
  if (std::isnan(w) || w < -kInvE - kBoundaryEps || w >= 0.0)
    throw DomainError("lambert_wm1: argument outside [-1/e, 0)");
  if (w <= -kInvE) return -1.0;
  if (w < -0.25) {
    double p = branch_p(w);
    if (p < 1e-3) return branch_series(-p);
    return halley(w, branch_series(-p));
  }
  double l1 = std::log(-w), l2 = std::log(-l1);
  return halley(w, l1 - l2 + l2 / l1);
}

double lambert_w0_exp(double log_w) {
  if (log_w < -700.0) return std::exp(log_w);
  if (log_w < 700.0) return lambert_w0(std::exp(log_w));
  return log_newton(log_w, log_w - std::log(log_w));
}

double lambert_wm1_negexp(double log_neg_w) {
  if (log_neg_w > -1.0 + kBoundaryEps) throw DomainError("lambert_wm1_negexp: argument outside [-1/e, 0)");
  if (log_neg_w > -700.0) return lambert_wm1(-std::exp(std::min(log_neg_w, -1.0)));
  return log_newton(log_neg_w, log_neg_w - std::log(-log_neg_w));
}

}  // namespace tailforge
