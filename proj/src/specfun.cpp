#include "tailforge/specfun.hpp"

#include <cmath>
#include <numbers>

namespace tailforge {

ExtendedReal ExtendedReal::finite(double v) {
  if (!std::isfinite(v)) throw NumericalError("non-finite value where a finite exponent was expected");
  return ExtendedReal(v, false);
}

FinitePmf::FinitePmf(std::vector<double> probs, std::vector<std::string> labels)
    : p_(std::move(probs)), labels_(std::move(labels)) {
  if (p_.empty()) throw DomainError("pmf must have at least one symbol");
  if (!labels_.empty() && labels_.size() != p_.size())
    throw DomainError("pmf labels and probabilities differ in length");
  double total = 0.0;
  for (double& v : p_) {
    if (!std::isfinite(v) || v < -kBoundaryEps) throw DomainError("pmf entry is negative or not finite");
    if (v < 0.0) v = 0.0;
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("pmf does not sum to one");
}

bool FinitePmf::strictly_positive() const {
  for (double v : p_)
    if (!(v > 0.0)) return false;
  return true;
}

double xlogx_kernel(double u) {
  if (u < -1.0 - kBoundaryEps) throw DomainError("xlogx_kernel needs u >= -1");
  if (u <= -1.0) return 1.0;
  if (std::abs(u) < 0.1) {
    // sum_{k>=2} (-1)^k u^k / (k(k-1))
    double sum = 0.0, pw = u * u;
    for (int k = 2; k < 60; ++k) {
      double term = pw / (k * (k - 1.0));
      sum += (k % 2 == 0) ? term : -term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      pw *= u;
    }
    return sum;
  }
  return (1.0 + u) * std::log1p(u) - u;
}

double clamp_to_domain(double x, double lo, double hi) {
  if (x < lo && x >= lo - kBoundaryEps) return lo;
  if (x > hi && x <= hi + kBoundaryEps) return hi;
  return x;
}

double binary_divergence(double p, double q) {
  p = clamp_to_domain(p, 0.0, 1.0);
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary_divergence: p outside [0,1]");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("binary_divergence: q outside [0,1]");
  if (q == 0.0 || q == 1.0) {
    if (p == q) return 0.0;
    throw DomainError("binary_divergence: q on the boundary with p != q");
  }
  // Written as q*k((p-q)/q) + (1-q)*k((q-p)/(1-q)); both terms are
  // nonnegative so nothing cancels when p is close to q.
  double r = q * xlogx_kernel((p - q) / q) + (1.0 - q) * xlogx_kernel((q - p) / (1.0 - q));
  return r < 0.0 ? 0.0 : r;
}

ExtendedReal kl_divergence(const FinitePmf& p, const FinitePmf& q) {
  if (p.size() != q.size()) throw DomainError("kl_divergence: alphabet mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return ExtendedReal::infinity();
    s += p[i] * std::log(p[i] / q[i]);
  }
  return ExtendedReal::finite(s < 0.0 ? 0.0 : s);
}

double binary_entropy(double x) {
  x = clamp_to_domain(x, 0.0, 1.0);
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binary_entropy: x outside [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

ExtendedReal f_delta(double delta) {
  if (delta < 0.0) throw DomainError("f_delta: negative delta");
  delta = clamp_to_domain(delta, 0.0, 1.0);
  if (delta > 1.0) return ExtendedReal::infinity();
  // ln2 (1 - h2((1-d)/2)) = D((1+d)/2 || 1/2)
  return ExtendedReal::finite(binary_divergence(0.5 * (1.0 + delta), 0.5));
}

double f_delta_series(double delta, int terms) {
  double sum = 0.0, d2 = delta * delta, pw = d2;
  for (int p = 1; p <= terms; ++p) {
    sum += pw / (2.0 * p * (2.0 * p - 1.0));
    pw *= d2;
  }
  return sum;
}

double big_b(double u) {
  if (!(u > 0.0)) throw DomainError("big_b: u must be positive");
  return 2.0 * xlogx_kernel(u) / (u * u);
}

double phi_m(int m, double y) {
  if (m < 2 || m % 2 != 0) throw DomainError("phi_m: m must be an even integer >= 2");
  if (y == 0.0) return 1.0;
  if (std::abs(y) < 2.0) {
    // m! sum_{j>=0} y^j / (m+j)!
    double term = 1.0, sum = 1.0;
    for (int j = 1; j < 200; ++j) {
      term *= y / (m + j);
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  double partial = 0.0, term = 1.0;
  for (int l = 0; l < m; ++l) {
    partial += term;
    term *= y / (l + 1);
  }
  // term now holds y^m / m!
  return (std::exp(y) - partial) / term;
}

QEnvelope q_function_envelope(double x) {
  if (!(x > 0.0)) throw DomainError("q_function_envelope: x must be positive");
  double c = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  return {x / (1.0 + x * x) * c, c / x};
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double log_expm1(double a) {
  if (!(a > 0.0)) throw DomainError("log_expm1: argument must be positive");
  if (a > 30.0) return a + std::log1p(-std::exp(-a));
  return std::log(std::expm1(a));
}

}  // namespace tailforge
