#include "tailforge/bounds.hpp"

#include <cmath>

namespace tailforge {

MartingaleSpec::MartingaleSpec(double d, double sigma2) : d_(d), sigma2_(sigma2) {
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("martingale spec: d must be positive");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw DomainError("martingale spec: sigma2 must be positive");
  if (sigma2 > d * d * (1.0 + kBoundaryEps)) throw DomainError("martingale spec: sigma2 exceeds d^2");
  if (sigma2 > d * d) sigma2_ = d * d;
}

MomentProfile::MomentProfile(std::vector<double> gammas) : g_(std::move(gammas)) {
  if (g_.empty() || g_.size() % 2 == 0) throw DomainError("moment profile needs gamma_2..gamma_m for an even m");
  for (double g : g_)
    if (!(g >= 0.0) || !std::isfinite(g)) throw DomainError("moment profile entries must be nonnegative");
  if (!(g_.back() > 0.0)) throw DomainError("moment profile: gamma_m must be positive");
}

MomentProfile MomentProfile::truncated(int m) const {
  if (m < 2 || m % 2 != 0 || m > this->m()) throw DomainError("truncated: invalid order");
  return MomentProfile(std::vector<double>(g_.begin(), g_.begin() + (m - 1)));
}

std::string method_name(Method m) {
  switch (m) {
    case Method::azuma: return "azuma";
    case Method::thm2: return "thm2";
    case Method::thm3: return "thm3";
    case Method::cor2: return "cor2";
    case Method::cor3: return "cor3";
    case Method::cor4: return "cor4";
    case Method::thm4: return "thm4";
    case Method::cor6: return "cor6";
    case Method::pinsker: return "pinsker";
    case Method::refined_pinsker: return "refined_pinsker";
    case Method::chung_lu: return "chung_lu";
    case Method::freedman: return "freedman";
  }
  return "unknown";
}

namespace {

ExponentValue make(Method m, double gamma, double delta, ExtendedReal e) {
  ExponentValue v;
  v.exponent = e;
  v.method = m;
  v.gamma = gamma;
  v.delta = delta;
  return v;
}

ExponentValue finite(Method m, double gamma, double delta, double e) {
  return make(m, gamma, delta, ExtendedReal::finite(e < 0.0 ? 0.0 : e));
}

ExponentValue infinite(Method m, double gamma, double delta) {
  return make(m, gamma, delta, ExtendedReal::infinity());
}

// Shared preamble: clamp and validate delta; true when delta > 1.
bool prepare_delta(double& delta) {
  if (!(delta >= -kBoundaryEps)) throw DomainError("delta must be nonnegative");
  delta = clamp_to_domain(delta, 0.0, 1.0);
  return delta > 1.0;
}

void prepare_gamma(double& gamma, bool allow_zero = false) {
  gamma = clamp_to_domain(gamma, 0.0, 1.0);
  if (allow_zero ? !(gamma >= 0.0 && gamma <= 1.0) : !(gamma > 0.0 && gamma <= 1.0))
    throw DomainError("gamma must lie in (0,1]");
}

}  // namespace

ExponentValue azuma_exponent(double delta) {
  if (prepare_delta(delta)) return infinite(Method::azuma, 1.0, delta);
  return finite(Method::azuma, 1.0, delta, 0.5 * delta * delta);
}

ExponentValue azuma_exponent(const MartingaleSpec& spec, double alpha) { return azuma_exponent(spec.delta(alpha)); }

TailBound azuma_bound_nonuniform(const std::vector<double>& d_seq, double r) {
  if (d_seq.empty()) throw DomainError("azuma_bound_nonuniform: empty jump sequence");
  if (!(r >= 0.0)) throw DomainError("azuma_bound_nonuniform: r must be nonnegative");
  double s = 0.0;
  for (double d : d_seq) {
    if (!(d > 0.0)) throw DomainError("azuma_bound_nonuniform: jumps must be positive");
    s += d * d;
  }
  return {2.0 * std::exp(-r * r / (2.0 * s))};
}

ExponentValue thm2_exponent(double gamma, double delta) {
  prepare_gamma(gamma);
  if (prepare_delta(delta)) return infinite(Method::thm2, gamma, delta);
  double q = gamma / (1.0 + gamma);
  if (delta == 1.0) return finite(Method::thm2, gamma, delta, std::log1p(1.0 / gamma));
  return finite(Method::thm2, gamma, delta, binary_divergence((delta + gamma) / (1.0 + gamma), q));
}

ExponentValue thm2_exponent(const MartingaleSpec& spec, double alpha) {
  return thm2_exponent(spec.gamma(), spec.delta(alpha));
}

ExponentValue cor2_exponent(double delta) {
  if (prepare_delta(delta)) return infinite(Method::cor2, 1.0, delta);
  return make(Method::cor2, 1.0, delta, f_delta(delta));
}

ExponentValue pinsker_loosened_exponent(double gamma, double delta) {
  prepare_gamma(gamma);
  if (prepare_delta(delta)) return infinite(Method::pinsker, gamma, delta);
  double t = delta / (1.0 + gamma);
  return finite(Method::pinsker, gamma, delta, 2.0 * t * t);
}

ExponentValue refined_pinsker_exponent(double delta) {
  if (prepare_delta(delta)) return infinite(Method::refined_pinsker, 1.0, delta);
  double d2 = delta * delta;
  double v = d2 * (0.5 + d2 * (1.0 / 36 + d2 * (1.0 / 270 + d2 * (221.0 / 340220))));
  return finite(Method::refined_pinsker, 1.0, delta, v);
}

ExponentValue cor3_exponent(double gamma, double delta) {
  prepare_gamma(gamma);
  if (prepare_delta(delta)) return infinite(Method::cor3, gamma, delta);
  return finite(Method::cor3, gamma, delta, gamma * xlogx_kernel(delta / gamma));
}

ExponentValue thm3_exponent(double gamma, double delta) {
  prepare_gamma(gamma);
  if (prepare_delta(delta)) return infinite(Method::thm3, gamma, delta);
  if (delta == 0.0) return finite(Method::thm3, gamma, delta, 0.0);
  if (delta == 1.0) return finite(Method::thm3, gamma, delta, std::log(4.0 / (1.0 + gamma)));
  if (gamma == 1.0) {
    // w has a (1 - gamma) denominator; the limit is Corollary 2.
    return make(Method::thm3, gamma, delta, f_delta(delta));
  }
  double k = (gamma + delta) / ((1.0 + delta) * (1.0 - gamma));
  double log_neg_w = std::log((1.0 + gamma) * (1.0 - delta) / ((1.0 - gamma) * (1.0 + delta))) - 1.0 - 2.0 * k;
  double w = lambert_wm1_negexp(log_neg_w);
  double x = -0.5 * (1.0 + w) - k;
  double u = 0.25 * (1.0 + gamma) * std::exp((1.0 - delta) * x);
  double v = (0.5 + 0.25 * (1.0 + 2.0 * x) * (1.0 - gamma)) * std::exp(-(1.0 + delta) * x);
  return finite(Method::thm3, gamma, delta, -std::log(u + v));
}

ExponentValue cor4_exponent(double gamma, double delta) {
  prepare_gamma(gamma);
  if (prepare_delta(delta)) return infinite(Method::cor4, gamma, delta);
  if (delta == 0.0) return finite(Method::cor4, gamma, delta, 0.0);
  if (delta == 1.0) {
    double a = 1.0 / gamma;
    ExponentValue v = finite(Method::cor4, gamma, delta, a - std::log(gamma) - log_expm1(a));
    v.argmin = a;
    v.m = 2;
    return v;
  }
  double x = cor4_argmin(gamma, delta);
  ExponentValue v = finite(Method::cor4, gamma, delta, thm4_objective(MomentProfile({gamma}), delta, x));
  v.argmin = x;
  v.m = 2;
  return v;
}

double cor4_argmin(double gamma, double delta) {
  prepare_gamma(gamma);
  prepare_delta(delta);
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("cor4_argmin: delta must lie in (0,1]");
  double a = 1.0 / gamma + 1.0 / delta - 1.0;
  if (delta == 1.0) return a;
  double y = lambert_w0_exp(std::log((1.0 - delta) / delta) + a);
  double x = a - y;
  return x < 0.0 ? 0.0 : x;
}

Cor6Result cor6_suboptimal(const MomentProfile& profile, double delta) {
  prepare_delta(delta);
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("cor6_suboptimal: delta must lie in (0,1]");
  int m = profile.m();
  double g2 = profile.gamma(2), gm = profile.gamma(m);
  if (!(g2 > 0.0)) throw DomainError("cor6_suboptimal: gamma_2 must be positive");
  double a = 1.0 / g2;
  double b = gm / g2 * (1.0 / delta - 1.0);
  double c = 1.0 / delta - b;
  Cor6Result r;
  bool ok = std::abs(c) > 1e-14;
  if (ok) {
    double s = (a + b) / c;
    if (b == 0.0) {
      r.x = s;
    } else if (b / c > 0.0) {
      r.x = s - lambert_w0_exp(std::log(b / c) + s);
    } else {
      double arg = b / c * std::exp(s);
      ok = std::isfinite(arg) && arg >= -std::exp(-1.0);
      if (ok) r.x = s - lambert_w0(arg);
    }
    ok = ok && std::isfinite(r.x) && r.x >= 0.0;
  }
  if (!ok) {
    ExponentValue e4 = thm4_exponent(profile, delta);
    r.fallback = true;
    r.x = e4.argmin;
    r.exponent = e4;
    r.exponent.method = Method::cor6;
    return r;
  }
  // x = 0 is always admissible, so a poor closed-form x never yields less than 0.
  r.exponent = finite(Method::cor6, g2, delta, thm4_objective(profile, delta, r.x));
  r.exponent.m = m;
  r.exponent.argmin = r.x;
  return r;
}

E2E4Report compare_e2_e4(const MomentProfile& profile, double gamma, double delta) {
  if (std::abs(profile.gamma(2) - gamma) > 1e-12 * std::max(1.0, gamma))
    throw DomainError("compare_e2_e4: gamma must equal the profile's gamma_2");
  E2E4Report r;
  r.e2 = thm2_exponent(gamma, delta);
  r.e4 = thm4_exponent(profile, delta);
  double dclamped = clamp_to_domain(delta, 0.0, 1.0);
  if (dclamped > 0.0 && dclamped <= 1.0) {
    r.e4_tilde = cor6_suboptimal(profile, delta).exponent;
  } else if (dclamped == 0.0) {
    r.e4_tilde = finite(Method::cor6, gamma, 0.0, 0.0);
  } else {
    r.e4_tilde = infinite(Method::cor6, gamma, dclamped);
  }
  r.e4_beats_e2 = r.e4.exponent > r.e2.exponent;
  return r;
}

ExponentValue freedman_exponent(double z, double r) {
  if (!(z > 0.0) || !(r > 0.0)) throw DomainError("freedman_exponent: z and r must be positive");
  // (z^2 / 2r) B(z/r) = r ((1+u)ln(1+u) - u), u = z/r
  return finite(Method::freedman, 0.0, 0.0, r * xlogx_kernel(z / r));
}

ExponentValue chung_lu_exponent(double gamma, double delta) {
  prepare_gamma(gamma, true);
  if (prepare_delta(delta)) return infinite(Method::chung_lu, gamma, delta);
  if (delta == 0.0) return finite(Method::chung_lu, gamma, delta, 0.0);
  return finite(Method::chung_lu, gamma, delta, delta * delta / (2.0 * gamma + 2.0 * delta / 3.0));
}

SmallDeviationBound small_deviation_bound(double gamma, double delta, double n) {
  prepare_gamma(gamma);
  if (!(delta >= 0.0)) throw DomainError("small_deviation_bound: delta must be nonnegative");
  if (!(n >= 1.0)) throw DomainError("small_deviation_bound: n must be at least 1");
  double lead = delta * delta / (2.0 * gamma);
  SmallDeviationBound r;
  r.limit.raw = 2.0 * std::exp(-lead);
  if (delta == 0.0) {
    r.finite_n.raw = 2.0;
  } else {
    r.finite_n.raw = 2.0 * std::exp(-lead * big_b(delta / (gamma * std::sqrt(n))));
  }
  return r;
}

MdpReport mdp_exponent_check(double sigma2, double d, double alpha, double eta, const std::vector<double>& n_list) {
  if (!(eta > 0.5 && eta < 1.0)) throw DomainError("mdp_exponent_check: eta must lie in (1/2, 1)");
  if (!(alpha >= 0.0)) throw DomainError("mdp_exponent_check: alpha must be nonnegative");
  MartingaleSpec spec(d, sigma2);
  MdpReport rep;
  rep.limit_thm2 = -alpha * alpha / (2.0 * sigma2);
  rep.limit_azuma = -alpha * alpha / (2.0 * d * d);
  for (double n : n_list) {
    if (!(n >= 1.0)) throw DomainError("mdp_exponent_check: n must be at least 1");
    double scale = std::pow(n, 1.0 - 2.0 * eta);
    double dp = spec.delta(alpha) * std::pow(n, eta - 1.0);
    ExponentValue e2 = thm2_exponent(spec.gamma(), dp);
    ExponentValue ea = azuma_exponent(dp);
    MdpRow row;
    row.n = n;
    row.thm2_one_sided = e2.is_infinite() ? -kInf : -scale * n * e2.value();
    row.thm2_two_sided = row.thm2_one_sided + scale * std::log(2.0);
    row.azuma_one_sided = ea.is_infinite() ? -kInf : -scale * n * ea.value();
    row.azuma_two_sided = row.azuma_one_sided + scale * std::log(2.0);
    rep.rows.push_back(row);
  }
  return rep;
}

MgfPair mcdiarmid_mgf_compare(double gamma, double x) {
  if (!(x >= 0.0)) throw DomainError("mcdiarmid_mgf_compare: x must be nonnegative");
  prepare_gamma(gamma, true);
  double y = std::expm1(x) - x;
  return {1.0 + gamma * y, std::exp(gamma * y)};
}

}  // namespace tailforge
