#ifndef TAILFORGE_BOUNDS_HPP
#define TAILFORGE_BOUNDS_HPP

#include <string>
#include <vector>

#include "tailforge/specfun.hpp"

namespace tailforge {

// Jump bound d and conditional-variance bound sigma2 of a martingale.
class MartingaleSpec {
public:
  MartingaleSpec(double d, double sigma2);
  double d() const { return d_; }
  double sigma2() const { return sigma2_; }
  double gamma() const { return sigma2_ / (d_ * d_); }
  double delta(double alpha) const { return alpha / d_; }

private:
  double d_;
  double sigma2_;
};

// gamma_2 .. gamma_m for an even m; gammas()[l - 2] is gamma_l.
class MomentProfile {
public:
  explicit MomentProfile(std::vector<double> gammas);
  int m() const { return static_cast<int>(g_.size()) + 1; }
  double gamma(int l) const { return g_.at(static_cast<std::size_t>(l - 2)); }
  const std::vector<double>& gammas() const { return g_; }
  MomentProfile truncated(int m) const;

private:
  std::vector<double> g_;
};

enum class Method {
  azuma,
  thm2,
  thm3,
  cor2,
  cor3,
  cor4,
  thm4,
  cor6,
  pinsker,
  refined_pinsker,
  chung_lu,
  freedman,
};
std::string method_name(Method m);

struct ExponentValue {
  ExtendedReal exponent;
  Method method = Method::azuma;
  double gamma = 0.0;
  double delta = 0.0;
  int m = 0;
  // thm4 only: the numeric minimiser reached the bracket ceiling, so the
  // reported value is the infimum over [0, ceiling] rather than [0, inf).
  bool hit_ceiling = false;
  double argmin = 0.0;

  double value() const { return exponent.value(); }
  bool is_infinite() const { return exponent.is_infinite(); }
};

// Probability bound as computed; clipped() is what gets reported.
struct TailBound {
  double raw = 1.0;
  double clipped() const { return raw < 0.0 ? 0.0 : (raw > 1.0 ? 1.0 : raw); }
};

ExponentValue azuma_exponent(double delta);
ExponentValue azuma_exponent(const MartingaleSpec& spec, double alpha);
TailBound azuma_bound_nonuniform(const std::vector<double>& d_seq, double r);

ExponentValue thm2_exponent(double gamma, double delta);
ExponentValue thm2_exponent(const MartingaleSpec& spec, double alpha);
ExponentValue cor2_exponent(double delta);  // f(delta), the gamma = 1 case
ExponentValue pinsker_loosened_exponent(double gamma, double delta);
ExponentValue refined_pinsker_exponent(double delta);
ExponentValue cor3_exponent(double gamma, double delta);
ExponentValue thm3_exponent(double gamma, double delta);

// delta*x - ln(1 + sum_{l<m}(g_l - g_m) x^l/l! + g_m(e^x - 1 - x)); thm4 is its sup over x >= 0.
double thm4_objective(const MomentProfile& profile, double delta, double x);
ExponentValue thm4_exponent(const MomentProfile& profile, double delta);
ExponentValue cor4_exponent(double gamma, double delta);
double cor4_argmin(double gamma, double delta);

struct Cor6Result {
  double x = 0.0;
  ExponentValue exponent;
  bool fallback = false;  // c = 0 (or no admissible x); numeric minimiser used
};
Cor6Result cor6_suboptimal(const MomentProfile& profile, double delta);

struct E2E4Report {
  ExponentValue e2;
  ExponentValue e4;
  ExponentValue e4_tilde;
  bool e4_beats_e2 = false;
};
E2E4Report compare_e2_e4(const MomentProfile& profile, double gamma, double delta);

ExponentValue freedman_exponent(double z, double r);
ExponentValue chung_lu_exponent(double gamma, double delta);

struct SmallDeviationBound {
  TailBound finite_n;
  TailBound limit;
};
// Bound on P(|X_n - X_0| >= alpha sqrt(n)), with delta = alpha/d.
SmallDeviationBound small_deviation_bound(double gamma, double delta, double n);

struct MdpRow {
  double n = 0.0;
  double thm2_two_sided = 0.0;  // n^{1-2eta} ln(2 e^{-n E})
  double thm2_one_sided = 0.0;  // n^{1-2eta} ln(e^{-n E})
  double azuma_two_sided = 0.0;
  double azuma_one_sided = 0.0;
};
struct MdpReport {
  double limit_thm2 = 0.0;   // -alpha^2 / (2 sigma^2)
  double limit_azuma = 0.0;  // -alpha^2 / (2 d^2)
  std::vector<MdpRow> rows;
};
// Scaled log-bounds on P(|S_n| >= alpha n^eta) for i.i.d. steps with
// |X_k| <= d and variance sigma2.
MdpReport mdp_exponent_check(double sigma2, double d, double alpha, double eta, const std::vector<double>& n_list);

struct MgfPair {
  double tight;
  double loose;
};
MgfPair mcdiarmid_mgf_compare(double gamma, double x);

}  // namespace tailforge

#endif
