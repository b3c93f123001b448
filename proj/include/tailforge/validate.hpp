#ifndef TAILFORGE_VALIDATE_HPP
#define TAILFORGE_VALIDATE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tailforge/bounds.hpp"
#include "tailforge/rng.hpp"
#include "tailforge/specfun.hpp"

namespace tailforge {

// Finite-support, zero-mean increment law.
class IncrementLaw {
public:
  IncrementLaw(std::vector<double> values, std::vector<double> probs);
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return values_.size(); }
  double max_abs() const;
  double variance() const;
  double moment(int l) const;  // E[X^l]
  double sample(Rng& rng) const;
  IncrementLaw negated() const;

private:
  std::vector<double> values_, probs_;
  std::vector<double> cdf_;
};

// d w.p. eps, -eps d/(1-eps) w.p. 1-eps.
struct TwoPointIncrement {
  double d = 1.0;
  double eps = 0.5;
  IncrementLaw law() const;
};

IncrementLaw symmetric_pm_one();
// Bernoulli(p) - p.
IncrementLaw centered_bernoulli(double p);

enum class Sidedness { one_sided, two_sided };

struct TailQuery {
  int n = 1;
  double threshold = 0.0;
  Sidedness sides = Sidedness::one_sided;
};

struct TailResult {
  double probability = 0.0;
  bool exact_lattice = false;  // integer lattice; otherwise 1e-12 bins
  double bin_error = 0.0;      // worst-case position error n * bin / 2
  std::size_t states = 0;
};
// P(S_n >= t), or P(|S_n| >= t) when two-sided.
TailResult exact_tail_dp(const IncrementLaw& law, const TailQuery& q);

// P(Bin(n, p) >= k)
double binomial_tail(int n, double p, int k);

struct Sandwich {
  double lower = 0.0;
  double exact = 0.0;
  double upper = 1.0;
  int k = 0;
  bool holds() const;
};
Sandwich types_sandwich_check(double p, int n, double r);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};
WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t trials);

struct MonteCarloResult {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  WilsonInterval ci;
};
MonteCarloResult monte_carlo_tail(const IncrementLaw& law, const TailQuery& q, std::uint64_t trials,
                                  std::uint64_t seed, int threads = 0);
// Generic sampler: event(rng) is called once per trial on its own substream.
MonteCarloResult monte_carlo_event(const std::function<bool(Rng&)>& event, std::uint64_t trials, std::uint64_t seed,
                                   int threads = 0);

struct NamedBound {
  std::string name;
  double value = 1.0;
};
// Analytic upper bounds on the tail in q for sums of i.i.d. copies of law:
// Azuma, Thm 2, Thm 3, Cor 2, Cor 3, Cor 4 and Thm 4 with m in {2, 4, 6}.
std::vector<NamedBound> analytic_tail_bounds(const IncrementLaw& law, const TailQuery& q);

struct Example3Result {
  double azuma = 1.0;
  double thm2 = 1.0;
  double exact = 1.0;
};
// Tail P(S_k >= k x) for the two-point law; x is the per-step deviation.
Example3Result example3_comparison(double eps, double d, double x, int k);

}  // namespace tailforge

#endif
