#include <algorithm>
#include <cmath>

#include "tailforge/bounds.hpp"

namespace tailforge {
namespace {

constexpr double kGolden = 0.6180339887498949;

// 1 + sum_{l=2}^{m-1} (g_l - g_m) x^l / l!
double poly_part(const MomentProfile& p, double x) {
  int m = p.m();
  double gm = p.gamma(m);
  double sum = 1.0, term = x;  // term = x^l / l!
  for (int l = 2; l < m; ++l) {
    term *= x / l;
    sum += (p.gamma(l) - gm) * term;
  }
  return sum;
}

double log_base(const MomentProfile& p, double x) {
  double gm = p.gamma(p.m());
  double poly = poly_part(p, x);
  if (x < 30.0) {
    double base = poly + gm * (std::expm1(x) - x);
    if (!(base > 0.0)) throw DomainError("moment profile gives a nonpositive moment-generating bound");
    return std::log(base);
  }
  double ex = std::exp(-x);
  double inner = gm * (1.0 - (1.0 + x) * ex) + poly * ex;
  if (!(inner > 0.0)) throw DomainError("moment profile gives a nonpositive moment-generating bound");
  return x + std::log(inner);
}

}  // namespace

double thm4_objective(const MomentProfile& profile, double delta, double x) {
  return delta * x - log_base(profile, x);
}

ExponentValue thm4_exponent(const MomentProfile& profile, double delta) {
  if (!(delta >= -kBoundaryEps)) throw DomainError("thm4_exponent: delta must be nonnegative");
  delta = clamp_to_domain(delta, 0.0, 1.0);
  int m = profile.m();
  double gm = profile.gamma(m);
  ExponentValue v;
  v.method = Method::thm4;
  v.gamma = profile.gamma(2);
  v.delta = delta;
  v.m = m;
  if (delta > 1.0) {
    v.exponent = ExtendedReal::infinity();
    return v;
  }
  if (delta == 0.0) {
    v.exponent = ExtendedReal::finite(0.0);
    return v;
  }
  if (m == 2 && delta == 1.0) {
    double a = 1.0 / gm;
    v.exponent = ExtendedReal::finite(a - std::log(gm) - log_expm1(a));
    v.argmin = a;
    return v;
  }

  double ceiling = std::max({50.0, 4.0 / gm, delta < 1.0 ? 10.0 / (1.0 - delta) : kInf});
  ceiling = std::min(ceiling, 1e6);
  auto g = [&](double x) { return -thm4_objective(profile, delta, x); };

  // Doubling scan for the region where g stops decreasing.
  double hi = 1.0;
  while (2.0 * hi <= ceiling && g(2.0 * hi) <= g(hi)) hi *= 2.0;
  double upper = std::min(2.0 * hi, ceiling);

  // Coarse grid guards against a second local minimum (the objective is
  // only proven unimodal for m = 2).
  const int kGrid = 256;
  int best = 0;
  double best_val = g(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    double val = g(upper * i / kGrid);
    if (val < best_val) {
      best_val = val;
      best = i;
    }
  }
  double a = upper * std::max(0, best - 1) / kGrid;
  double b = upper * std::min(kGrid, best + 1) / kGrid;

  double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 400 && (b - a) > 1e-12 * std::max(1.0, std::abs(a)); ++it) {
    if (gc <= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kGolden * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kGolden * (b - a);
      gd = g(d);
    }
  }
  double xs = 0.5 * (a + b);
  double val = g(xs);
  for (double cand : {a, b, c, d}) {
    double gv = g(cand);
    if (gv < val) {
      val = gv;
      xs = cand;
    }
  }
  if (best_val < val) {
    val = best_val;
    xs = upper * best / kGrid;
  }
  // a plateau in floating point stops the scan early, so also compare against the ceiling itself
  double at_ceiling = g(ceiling);
  if (at_ceiling <= val + 1e-12 * std::max(1.0, std::abs(val))) {
    val = std::min(val, at_ceiling);
    xs = ceiling;
  }
  v.argmin = xs;
  v.hit_ceiling = xs >= ceiling * (1.0 - 1e-6);
  v.exponent = ExtendedReal::finite(std::max(0.0, -val));
  return v;
}

}  // namespace tailforge
