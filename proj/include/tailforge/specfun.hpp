#ifndef TAILFORGE_SPECFUN_HPP
#define TAILFORGE_SPECFUN_HPP

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tailforge {

// Bad argument supplied by the caller (maps to CLI exit code 2).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Iteration failed to converge or a bracket was exhausted (exit code 3).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kBoundaryEps = 1e-12;

// Nonnegative-or-finite real with an explicit +infinity state.  Built only
// through finite() or infinity(); a NaN or an overflowed intermediate is
// rejected instead of silently turning into "inf".
class ExtendedReal {
public:
  ExtendedReal() = default;
  static ExtendedReal finite(double v);
  static ExtendedReal infinity() { return ExtendedReal(kInf, true); }

  bool is_infinite() const { return inf_; }
  double value() const { return v_; }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b) { return !(b < a); }
  friend bool operator>(const ExtendedReal& a, const ExtendedReal& b) { return b < a; }
  friend bool operator>=(const ExtendedReal& a, const ExtendedReal& b) { return !(a < b); }

private:
  ExtendedReal(double v, bool inf) : v_(v), inf_(inf) {}
  double v_ = 0.0;
  bool inf_ = false;
};

// Probability mass function on a finite labelled alphabet.
class FinitePmf {
public:
  FinitePmf() = default;
  explicit FinitePmf(std::vector<double> probs, std::vector<std::string> labels = {});

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& probs() const { return p_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool strictly_positive() const;

private:
  std::vector<double> p_;
  std::vector<std::string> labels_;
};

// (1+u) ln(1+u) - u, accurate near u = 0.  Defined for u >= -1.
double xlogx_kernel(double u);

double binary_divergence(double p, double q);
ExtendedReal kl_divergence(const FinitePmf& p, const FinitePmf& q);
double binary_entropy(double x);  // bits

ExtendedReal f_delta(double delta);
double f_delta_series(double delta, int terms);

double big_b(double u);
inline constexpr double big_b_at_zero() { return 1.0; }

double phi_m(int m, double y);

double lambert_w0(double w);
double lambert_wm1(double w);
// W0(e^L) and W_{-1}(-e^L) for arguments whose exponent would overflow or
// underflow a double.
double lambert_w0_exp(double log_w);
double lambert_wm1_negexp(double log_neg_w);

struct QEnvelope {
  double lower;
  double upper;
};
QEnvelope q_function_envelope(double x);
double q_function(double x);

// ln(e^a - 1) for a > 0 without overflow.
double log_expm1(double a);

// Snap x onto [lo, hi] when it lies within kBoundaryEps outside.
double clamp_to_domain(double x, double lo, double hi);

}  // namespace tailforge

#endif
