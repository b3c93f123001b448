#include "tailforge/hyptest.hpp"

#include <algorithm>
#include <cmath>

namespace tailforge {
namespace {

constexpr double kGolden = 0.6180339887498949;

template <class F>
double golden_max(F f, double a, double b, double tol) {
  double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 400 && (b - a) > tol * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// log P2/P1 per symbol.
std::vector<double> llr21(const HypothesisPair& pair) {
  std::vector<double> l(pair.p1().size());
  for (std::size_t i = 0; i < l.size(); ++i) l[i] = std::log(pair.p2()[i] / pair.p1()[i]);
  return l;
}

// Mean of ln(P2/P1) under the tilted law proportional to P1^{1-t} P2^t.
double h_prime(const HypothesisPair& pair, const std::vector<double>& l, double t) {
  double mx = -kInf;
  std::vector<double> e(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    e[i] = std::log(pair.p1()[i]) + t * l[i];
    mx = std::max(mx, e[i]);
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    double w = std::exp(e[i] - mx);
    num += w * l[i];
    den += w;
  }
  return num / den;
}

ExtendedReal min_ext(ExtendedReal a, ExtendedReal b) { return a < b ? a : b; }

ExtendedReal minus(ExtendedReal a, double b) {
  if (a.is_infinite()) return a;
  double v = a.value() - b;
  return ExtendedReal::finite(v < 0.0 ? 0.0 : v);
}

}  // namespace

HypothesisPair::HypothesisPair(FinitePmf p1, FinitePmf p2, double prior1)
    : p1_(std::move(p1)), p2_(std::move(p2)), prior1_(prior1) {
  if (p1_.size() != p2_.size()) throw DomainError("hypothesis pair: alphabet mismatch");
  if (!p1_.strictly_positive() || !p2_.strictly_positive())
    throw DomainError("hypothesis pair: both pmfs must be strictly positive");
  if (!(prior1 > 0.0 && prior1 < 1.0)) throw DomainError("hypothesis pair: priors must lie in (0,1)");
  d12_ = kl_divergence(p1_, p2_).value();
  d21_ = kl_divergence(p2_, p1_).value();
}

void validate_thresholds(const HypothesisPair& pair, const Thresholds& th) {
  if (!(-pair.d21() < th.lambda_under && th.lambda_under <= th.lambda_bar && th.lambda_bar < pair.d12()))
    throw DomainError("thresholds must satisfy -D(P2||P1) < lambda_under <= lambda_bar < D(P1||P2)");
}

double log_mgf_h(const HypothesisPair& pair, double t) {
  double mx = -kInf;
  std::vector<double> e(pair.p1().size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = (1.0 - t) * std::log(pair.p1()[i]) + t * std::log(pair.p2()[i]);
    mx = std::max(mx, e[i]);
  }
  double s = 0.0;
  for (double v : e) s += std::exp(v - mx);
  return mx + std::log(s);
}

ExtendedReal rate_function(const HypothesisPair& pair, double r) {
  std::vector<double> l = llr21(pair);
  double lmax = *std::max_element(l.begin(), l.end());
  double lmin = *std::min_element(l.begin(), l.end());
  double slack = 1e-12 * std::max(1.0, std::max(std::abs(lmax), std::abs(lmin)));
  if (r > lmax + slack || r < lmin - slack) return ExtendedReal::infinity();

  auto edge_value = [&](double target) {
    // sup is approached as |t| -> inf: -ln P1(argmax/argmin set)
    double mass = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i)
      if (std::abs(l[i] - target) <= slack) mass += pair.p1()[i];
    return ExtendedReal::finite(-std::log(mass));
  };
  if (lmax - lmin <= slack) return ExtendedReal::finite(0.0);
  if (r >= lmax - slack) return edge_value(lmax);
  if (r <= lmin + slack) return edge_value(lmin);

  double lo = -1.0, hi = 2.0;
  int guard = 0;
  while (r - h_prime(pair, l, hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 60) throw NumericalError("rate_function: bracket expansion failed");
  }
  guard = 0;
  while (r - h_prime(pair, l, lo) < 0.0) {
    hi = lo;
    lo *= 2.0;
    if (++guard > 60) throw NumericalError("rate_function: bracket expansion failed");
  }
  auto f = [&](double t) { return t * r - log_mgf_h(pair, t); };
  double t = golden_max(f, lo, hi, 1e-12);
  double v = f(t);
  return ExtendedReal::finite(v < 0.0 ? 0.0 : v);
}

double chernoff_information(const HypothesisPair& pair) {
  auto f = [&](double t) { return -log_mgf_h(pair, t); };
  double t = golden_max(f, 0.0, 1.0, 1e-12);
  return std::max(0.0, f(t));
}

ExactExponents exact_exponents(const HypothesisPair& pair, const Thresholds& th) {
  validate_thresholds(pair, th);
  double l1 = -th.lambda_bar, l2 = -th.lambda_under;
  ExactExponents e;
  e.i_lambda1 = rate_function(pair, l1);
  e.i_lambda2 = rate_function(pair, l2);
  e.i_lambda2_minus = minus(e.i_lambda2, l2);
  e.i_lambda1_minus = minus(e.i_lambda1, l1);
  e.error_or_erasure = min_ext(e.i_lambda1, e.i_lambda2_minus);
  e.error_only = min_ext(e.i_lambda2, e.i_lambda1_minus);
  return e;
}

MartingaleParams martingale_params(const HypothesisPair& pair, const Thresholds& th, VarianceLaw law) {
  validate_thresholds(pair, th);
  const auto& p1 = pair.p1();
  const auto& p2 = pair.p2();
  MartingaleParams mp;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    double j1 = std::log(p1[i] / p2[i]) - pair.d12();
    double j2 = std::log(p2[i] / p1[i]) - pair.d21();
    mp.d1 = std::max(mp.d1, std::abs(j1));
    mp.d2 = std::max(mp.d2, std::abs(j2));
    mp.sigma1sq += p1[i] * j1 * j1;
    mp.sigma2sq += (law == VarianceLaw::published ? p1[i] : p2[i]) * j2 * j2;
  }
  mp.gamma1 = std::min(1.0, mp.sigma1sq / (mp.d1 * mp.d1));
  mp.gamma2 = std::min(1.0, mp.sigma2sq / (mp.d2 * mp.d2));
  mp.eps11 = pair.d12() - th.lambda_bar;
  mp.eps21 = pair.d21() + th.lambda_under;
  mp.eps12 = pair.d12() - th.lambda_under;
  mp.eps22 = pair.d21() + th.lambda_bar;
  mp.delta11 = mp.eps11 / mp.d1;
  mp.delta21 = mp.eps21 / mp.d2;
  mp.delta12 = mp.eps12 / mp.d1;
  mp.delta22 = mp.eps22 / mp.d2;
  return mp;
}

LowerBoundPair refined_lower_bounds(const HypothesisPair& pair, const Thresholds& th, VarianceLaw law) {
  MartingaleParams mp = martingale_params(pair, th, law);
  auto e = [](double g, double d) { return thm2_exponent(g, d).exponent; };
  return {min_ext(e(mp.gamma1, mp.delta11), e(mp.gamma2, mp.delta21)),
          min_ext(e(mp.gamma1, mp.delta12), e(mp.gamma2, mp.delta22))};
}

LowerBoundPair azuma_lower_bounds(const HypothesisPair& pair, const Thresholds& th, VarianceLaw law) {
  MartingaleParams mp = martingale_params(pair, th, law);
  auto e = [](double d) { return azuma_exponent(d).exponent; };
  return {min_ext(e(mp.delta11), e(mp.delta21)), min_ext(e(mp.delta12), e(mp.delta22))};
}

double divergence_cubic_lower(double gamma, double delta) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("divergence_cubic_lower: gamma must lie in (0,1]");
  if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("divergence_cubic_lower: delta must lie in [0,1]");
  return delta * delta / (2.0 * gamma) - delta * delta * delta / (6.0 * gamma * gamma * (1.0 + gamma));
}

PmfFamily bernoulli_family() {
  PmfFamily f;
  f.pmf = [](double t) { return std::vector<double>{1.0 - t, t}; };
  f.derivative = [](double) { return std::vector<double>{-1.0, 1.0}; };
  return f;
}

PmfFamily ternary_family(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("ternary_family: alpha must lie in (0,1)");
  PmfFamily f;
  f.pmf = [alpha](double t) {
    return std::vector<double>{t * (1.0 - alpha) / (1.0 + t), alpha, (1.0 - alpha) / (1.0 + t)};
  };
  f.derivative = [alpha](double t) {
    double g = (1.0 - alpha) / ((1.0 + t) * (1.0 + t));
    return std::vector<double>{g, 0.0, -g};
  };
  return f;
}

double fisher_information(const PmfFamily& family, double theta) {
  std::vector<double> p = family.pmf(theta);
  std::vector<double> dp;
  if (family.derivative) {
    dp = family.derivative(theta);
  } else {
    const double h = 1e-5;
    std::vector<double> up = family.pmf(theta + h), dn = family.pmf(theta - h);
    dp.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) dp[i] = (up[i] - dn[i]) / (2.0 * h);
  }
  if (dp.size() != p.size()) throw DomainError("fisher_information: derivative size mismatch");
  double j = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) j += dp[i] * dp[i] / p[i];
    else if (dp[i] != 0.0) throw DomainError("fisher_information: zero mass with nonzero derivative");
  }
  return j;
}

FisherReport fisher_limit_check(const PmfFamily& family, double theta, const std::vector<double>& offsets,
                                VarianceLaw law) {
  FisherReport rep;
  rep.fisher = fisher_information(family, theta);
  rep.target = rep.fisher / 8.0;
  auto add = [&](double a, double b, double off) {
    FisherRow row;
    row.offset = off;
    row.theta = a;
    row.theta_prime = b;
    HypothesisPair pair(FinitePmf(family.pmf(a)), FinitePmf(family.pmf(b)));
    row.chernoff = chernoff_information(pair);
    row.e_l = refined_lower_bounds(pair, {}, law).error_only.value();
    row.e_l_azuma = azuma_lower_bounds(pair, {}, law).error_only.value();
    double d2 = (a - b) * (a - b);
    row.chernoff_ratio = row.chernoff / d2;
    row.e_l_ratio = row.e_l / d2;
    row.e_l_azuma_ratio = row.e_l_azuma / d2;
    rep.rows.push_back(row);
  };
  // theta against theta +- off, then the symmetric pair theta + off against theta - off
  for (double off : offsets) {
    add(theta, theta + off, off);
    add(theta, theta - off, -off);
    add(theta + off, theta - off, 2 * off);
  }
  return rep;
}

ModerateDeviationResult moderate_deviation_hyptest(const HypothesisPair& pair, double eps1, double eta, double n) {
  if (!(eta > 0.5 && eta < 1.0)) throw DomainError("moderate_deviation_hyptest: eta must lie in (1/2,1)");
  if (!(eps1 > 0.0)) throw DomainError("moderate_deviation_hyptest: eps1 must be positive");
  if (!(n >= 1.0)) throw DomainError("moderate_deviation_hyptest: n must be at least 1");
  MartingaleParams mp = martingale_params(pair);
  ModerateDeviationResult r;
  double shrink = std::pow(n, -(1.0 - eta));
  r.delta1 = eps1 * shrink / mp.d1;
  if (!(r.delta1 < 1.0)) throw DomainError("moderate_deviation_hyptest: n is below n0 (delta1 >= 1)");
  double lead = eps1 * eps1 * std::pow(n, 2.0 * eta - 1.0) / (2.0 * mp.sigma1sq);
  double corr = 1.0 - eps1 * mp.d1 / (3.0 * mp.sigma1sq * (1.0 + mp.gamma1)) * shrink;
  double log_bound = -lead * corr;
  r.bound = std::exp(log_bound);
  r.scaled_log = std::pow(n, 1.0 - 2.0 * eta) * log_bound;
  r.slope = -eps1 * eps1 / (2.0 * mp.sigma1sq);
  return r;
}

}  // namespace tailforge
