#ifndef TAILFORGE_CODINGAPPS_HPP
#define TAILFORGE_CODINGAPPS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tailforge/bounds.hpp"
#include "tailforge/specfun.hpp"

namespace tailforge {

// Binary-input DMC; sym is an involution on output indices with
// p0[y] == p1[sym[y]].
class DmcChannel {
public:
  DmcChannel(std::vector<std::string> outputs, FinitePmf p0, FinitePmf p1, std::vector<std::size_t> sym);
  std::size_t size() const { return p0_.size(); }
  const FinitePmf& p0() const { return p0_; }
  const FinitePmf& p1() const { return p1_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  const std::vector<std::size_t>& symmetry() const { return sym_; }

private:
  std::vector<std::string> outputs_;
  FinitePmf p0_, p1_;
  std::vector<std::size_t> sym_;
};

DmcChannel q_ary_channel(int q, double p);
DmcChannel bsc(double p);

enum class PairwiseMethod { bhattacharyya, z1, z2, z2_tilde };

struct PairwiseBound {
  double base = 1.0;
  PairwiseMethod method = PairwiseMethod::bhattacharyya;
  int m = 0;
  bool hit_ceiling = false;
  double bound_for_weight(int h) const;  // base^h
};

// Quantities shared by Z1 and the moment profile.
struct ChannelMartingale {
  double divergence = 0;  // D(P(.|0) || P(.|1))
  double d = 0;           // max_y |ln(P(y|1)/P(y|0))| + D
  double sigma2 = 0;      // E_0[(ln(P(Y|1)/P(Y|0)) + D)^2]
  double gamma = 0;
  double delta = 0;
};
ChannelMartingale channel_martingale(const DmcChannel& ch);

PairwiseBound bhattacharyya(const DmcChannel& ch);
PairwiseBound z1(const DmcChannel& ch);

struct ChannelProfile {
  MomentProfile profile;
  double delta;
};
ChannelProfile channel_moment_profile(const DmcChannel& ch, int m);

PairwiseBound z2m(const DmcChannel& ch, int m);
PairwiseBound z2m_tilde(const DmcChannel& ch, int m);

struct ConjectureProbe {
  std::vector<int> m;
  std::vector<double> gap;     // |Z2^(m) - Z_B|
  std::vector<double> ratio;   // gap[i] / gap[i-1]; NaN for the first entry
};
ConjectureProbe conjecture1_probe(const DmcChannel& ch, const std::vector<int>& m_list);

struct LdpcEnsemble {
  int n = 0;
  std::vector<double> lambda;  // lambda[i] = fraction of edges on degree-(i+1) variable nodes
  std::vector<double> rho;
  void validate() const;
  double design_rate() const;
  double avg_right_degree() const;
};

struct LdpcBound {
  double design_rate = 0;
  double avg_right_degree = 0;
  double beta = 0;
  TailBound refined;  // 2 * 2^{-[1 - h2((1-beta)/2)] n}
  TailBound azuma;    // 2 exp(-beta^2 n / 2)
};
LdpcBound ldpc_cycles_bound(const LdpcEnsemble& ens, double alpha);

struct OfdmModel {
  int n = 1;  // subcarriers
  int M = 2;  // PSK order
  void validate() const;
};

struct OfdmBounds {
  TailBound azuma;          // 2 exp(-alpha^2/8)
  TailBound refined;        // finite-n small-deviation bound, d = 2, sigma^2 = 2
  TailBound refined_limit;  // 2 exp(-alpha^2/4)
};
OfdmBounds ofdm_cf_bounds(const OfdmModel& model, double alpha);

// (4/(nM)) sum_{k<M} sin^2(pi k/M), as a floating-point sum.
double ofdm_trig_sum(int n, int M);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend bool operator==(const Rational&, const Rational&) = default;
};
// Same quantity evaluated exactly: sum_{k=0}^{M-1} sin^2(pi k/M) is M/2
// because sum_k cos(2 pi k/M) vanishes for M >= 2.
Rational ofdm_trig_sum_exact(int n, int M);

struct OfdmCheckReport {
  int trials = 0;
  double jump_bound = 0;      // 2/sqrt(n)
  double max_increment = 0;   // largest sampled |Y_i - Y_{i-1}|
  int violations = 0;
  double second_moment = 0;   // mean of sampled (Y_i - Y_{i-1})^2
  double second_moment_se = 0;
  double variance_target = 0; // 2/n
  bool trig_identity_ok = false;
};
OfdmCheckReport ofdm_martingale_check(const OfdmModel& model, int trials, std::uint64_t seed, int inner = 8,
                                      int threads = 0);

// max over a 16n-point grid of |s(t)| for the given unit-modulus symbols.
double ofdm_crest_factor_grid(const std::vector<double>& phases);

}  // namespace tailforge

#endif
