#ifndef TAILFORGE_HYPTEST_HPP
#define TAILFORGE_HYPTEST_HPP

#include <functional>
#include <vector>

#include "tailforge/bounds.hpp"
#include "tailforge/specfun.hpp"

namespace tailforge {

class HypothesisPair {
public:
  HypothesisPair(FinitePmf p1, FinitePmf p2, double prior1 = 0.5);
  const FinitePmf& p1() const { return p1_; }
  const FinitePmf& p2() const { return p2_; }
  double prior1() const { return prior1_; }
  double prior2() const { return 1.0 - prior1_; }
  double d12() const { return d12_; }  // D(P1||P2)
  double d21() const { return d21_; }  // D(P2||P1)

private:
  FinitePmf p1_, p2_;
  double prior1_;
  double d12_, d21_;
};

// Decide H1 when the normalised log-likelihood ratio exceeds lambda_bar, H2
// when it is below lambda_under, erase in between.
struct Thresholds {
  double lambda_bar = 0.0;
  double lambda_under = 0.0;
  static Thresholds single(double lambda) { return {lambda, lambda}; }
};
void validate_thresholds(const HypothesisPair& pair, const Thresholds& th);

double log_mgf_h(const HypothesisPair& pair, double t);
ExtendedReal rate_function(const HypothesisPair& pair, double r);
double chernoff_information(const HypothesisPair& pair);

struct ExactExponents {
  ExtendedReal i_lambda1;              // I(lambda1), lambda1 = -lambda_bar
  ExtendedReal i_lambda2;              // I(lambda2), lambda2 = -lambda_under
  ExtendedReal i_lambda2_minus;        // I(lambda2) - lambda2
  ExtendedReal i_lambda1_minus;        // I(lambda1) - lambda1
  ExtendedReal error_or_erasure;       // min{I(lambda1), I(lambda2) - lambda2}
  ExtendedReal error_only;             // min{I(lambda2), I(lambda1) - lambda1}
};
ExactExponents exact_exponents(const HypothesisPair& pair, const Thresholds& th);

// How the conditional variance of the second martingale is weighted.
//  published: sum_x P1(x) (ln(P2/P1) - D(P2||P1))^2; this is the weighting that
//             reproduces the numbers printed for the worked examples.
//  own:       sum_x P2(x) (ln(P2/P1) - D(P2||P1))^2, the variance under H2.
enum class VarianceLaw { published, own };

struct MartingaleParams {
  double d1 = 0, d2 = 0;
  double sigma1sq = 0, sigma2sq = 0;
  double gamma1 = 0, gamma2 = 0;
  double eps11 = 0, eps21 = 0, eps12 = 0, eps22 = 0;
  double delta11 = 0, delta21 = 0, delta12 = 0, delta22 = 0;
};
MartingaleParams martingale_params(const HypothesisPair& pair, const Thresholds& th = {},
                                   VarianceLaw law = VarianceLaw::published);

struct LowerBoundPair {
  ExtendedReal error_or_erasure;
  ExtendedReal error_only;
};
LowerBoundPair refined_lower_bounds(const HypothesisPair& pair, const Thresholds& th,
                                    VarianceLaw law = VarianceLaw::published);
LowerBoundPair azuma_lower_bounds(const HypothesisPair& pair, const Thresholds& th,
                                  VarianceLaw law = VarianceLaw::published);

double divergence_cubic_lower(double gamma, double delta);

// Parametrised family theta -> P_theta.  derivative may be empty, in which
// case a central difference with step 1e-5 is used.
struct PmfFamily {
  std::function<std::vector<double>(double)> pmf;
  std::function<std::vector<double>(double)> derivative;
};
PmfFamily bernoulli_family();  // P_theta = (1 - theta, theta)
PmfFamily ternary_family(double alpha);
double fisher_information(const PmfFamily& family, double theta);

struct FisherRow {
  double offset = 0;
  double theta = 0;        // first member of the pair
  double theta_prime = 0;
  double chernoff = 0;
  double e_l = 0;          // refined lower bound, zero threshold
  double e_l_azuma = 0;    // Azuma-based lower bound, zero threshold
  double chernoff_ratio = 0;  // chernoff / (theta - theta')^2
  double e_l_ratio = 0;
  double e_l_azuma_ratio = 0;
};
struct FisherReport {
  double fisher = 0;
  double target = 0;  // J / 8
  std::vector<FisherRow> rows;
};
FisherReport fisher_limit_check(const PmfFamily& family, double theta, const std::vector<double>& offsets,
                                VarianceLaw law = VarianceLaw::published);

struct ModerateDeviationResult {
  double bound = 0;
  double scaled_log = 0;  // n^{1-2 eta} ln(bound)
  double slope = 0;       // -eps1^2 / (2 sigma1^2)
  double delta1 = 0;
};
ModerateDeviationResult moderate_deviation_hyptest(const HypothesisPair& pair, double eps1, double eta, double n);

}  // namespace tailforge

#endif
