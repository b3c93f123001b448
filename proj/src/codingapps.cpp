#include "tailforge/codingapps.hpp"

#include <cmath>
#include <algorithm>
#include <numeric>

namespace tailforge {

DmcChannel::DmcChannel(std::vector<std::string> outputs, FinitePmf p0, FinitePmf p1, std::vector<std::size_t> sym)
    : outputs_(std::move(outputs)), p0_(std::move(p0)), p1_(std::move(p1)), sym_(std::move(sym)) {
  std::size_t q = p0_.size();
  if (p1_.size() != q || sym_.size() != q) throw DomainError("channel: p0, p1 and sym must have equal length");
  if (outputs_.empty()) {
    for (std::size_t y = 0; y < q; ++y) outputs_.push_back(std::to_string(y));
  } else if (outputs_.size() != q) {
    throw DomainError("channel: outputs and p0 differ in length");
  }
  if (!p0_.strictly_positive() || !p1_.strictly_positive())
    throw DomainError("channel: transition probabilities must be strictly positive");
  for (std::size_t y = 0; y < q; ++y) {
    if (sym_[y] >= q) throw DomainError("channel: sym entry out of range at output " + std::to_string(y));
    if (sym_[sym_[y]] != y) throw DomainError("channel: sym is not an involution at output " + std::to_string(y));
    if (std::abs(p0_[y] - p1_[sym_[y]]) > 1e-12)
      throw DomainError("channel: p0[y] != p1[sym[y]] at output " + std::to_string(y));
  }
}

DmcChannel q_ary_channel(int q, double p) {
  if (q < 2) throw DomainError("q_ary_channel: Q must be at least 2");
  if (!(p > 0.0 && p < 1.0 / (q - 1))) throw DomainError("q_ary_channel: p must lie in (0, 1/(Q-1))");
  std::vector<double> p0(q, p), p1(q, p);
  p0[0] = 1.0 - (q - 1) * p;
  p1[q - 1] = 1.0 - (q - 1) * p;
  std::vector<std::size_t> sym(q);
  for (int y = 0; y < q; ++y) sym[y] = static_cast<std::size_t>(q - 1 - y);
  return DmcChannel({}, FinitePmf(p0), FinitePmf(p1), sym);
}

DmcChannel bsc(double p) { return q_ary_channel(2, p); }

double PairwiseBound::bound_for_weight(int h) const { return std::pow(base, h); }

ChannelMartingale channel_martingale(const DmcChannel& ch) {
  ChannelMartingale cm;
  cm.divergence = kl_divergence(ch.p0(), ch.p1()).value();
  double mx = 0.0;
  for (std::size_t y = 0; y < ch.size(); ++y) {
    double l = std::log(ch.p1()[y] / ch.p0()[y]);
    mx = std::max(mx, std::abs(l));
    double xi = l + cm.divergence;
    cm.sigma2 += ch.p0()[y] * xi * xi;
  }
  cm.d = mx + cm.divergence;
  if (!(cm.d > 0.0)) throw DomainError("channel: identical rows give no martingale jump");
  cm.gamma = std::min(1.0, cm.sigma2 / (cm.d * cm.d));
  cm.delta = cm.divergence / cm.d;
  return cm;
}

PairwiseBound bhattacharyya(const DmcChannel& ch) {
  double s = 0.0;
  for (std::size_t y = 0; y < ch.size(); ++y) s += std::sqrt(ch.p0()[y] * ch.p1()[y]);
  return {std::min(1.0, s), PairwiseMethod::bhattacharyya, 0, false};
}

namespace {
// no information: every pairwise bound is trivially 1
bool rows_identical(const DmcChannel& ch) {
  for (std::size_t y = 0; y < ch.size(); ++y)
    if (ch.p0()[y] != ch.p1()[y]) return false;
  return true;
}
}  // namespace

PairwiseBound z1(const DmcChannel& ch) {
  if (rows_identical(ch)) return {1.0, PairwiseMethod::z1, 0, false};
  ChannelMartingale cm = channel_martingale(ch);
  ExponentValue e = thm2_exponent(cm.gamma, cm.delta);
  return {e.is_infinite() ? 0.0 : std::exp(-e.value()), PairwiseMethod::z1, 0, false};
}

ChannelProfile channel_moment_profile(const DmcChannel& ch, int m) {
  if (m < 2 || m % 2 != 0) throw DomainError("channel_moment_profile: m must be even and >= 2");
  ChannelMartingale cm = channel_martingale(ch);
  std::vector<double> gammas;
  for (int l = 2; l <= m; ++l) {
    double mu = 0.0;
    for (std::size_t y = 0; y < ch.size(); ++y) {
      double xi = std::log(ch.p1()[y] / ch.p0()[y]) + cm.divergence;
      mu += ch.p0()[y] * std::pow(xi, l);
    }
    gammas.push_back(std::max(0.0, mu) / std::pow(cm.d, l));
  }
  return {MomentProfile(gammas), cm.delta};
}

PairwiseBound z2m(const DmcChannel& ch, int m) {
  if (rows_identical(ch)) return {1.0, PairwiseMethod::z2, m, false};
  ChannelProfile cp = channel_moment_profile(ch, m);
  ExponentValue e = thm4_exponent(cp.profile, cp.delta);
  return {e.is_infinite() ? 0.0 : std::exp(-e.value()), PairwiseMethod::z2, m, e.hit_ceiling};
}

PairwiseBound z2m_tilde(const DmcChannel& ch, int m) {
  if (rows_identical(ch)) return {1.0, PairwiseMethod::z2_tilde, m, false};
  ChannelProfile cp = channel_moment_profile(ch, m);
  Cor6Result r = cor6_suboptimal(cp.profile, cp.delta);
  return {r.exponent.is_infinite() ? 0.0 : std::exp(-r.exponent.value()), PairwiseMethod::z2_tilde, m,
          r.exponent.hit_ceiling};
}

ConjectureProbe conjecture1_probe(const DmcChannel& ch, const std::vector<int>& m_list) {
  ConjectureProbe pr;
  double zb = bhattacharyya(ch).base;
  for (int m : m_list) {
    pr.m.push_back(m);
    pr.gap.push_back(std::abs(z2m(ch, m).base - zb));
    std::size_t k = pr.gap.size();
    pr.ratio.push_back(k < 2 || pr.gap[k - 2] == 0.0 ? std::nan("") : pr.gap[k - 1] / pr.gap[k - 2]);
  }
  return pr;
}

void LdpcEnsemble::validate() const {
  if (n < 1) throw DomainError("ldpc: block length must be positive");
  for (const auto* poly : {&lambda, &rho}) {
    if (poly->empty()) throw DomainError("ldpc: empty degree distribution");
    double s = 0.0;
    for (double c : *poly) {
      if (!(c >= 0.0)) throw DomainError("ldpc: degree coefficients must be nonnegative");
      s += c;
    }
    if (std::abs(s - 1.0) > 1e-9) throw DomainError("ldpc: degree coefficients must sum to one");
  }
}

namespace {
double integral(const std::vector<double>& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] / static_cast<double>(i + 1);
  return s;
}
}  // namespace

double LdpcEnsemble::design_rate() const { return 1.0 - integral(rho) / integral(lambda); }
double LdpcEnsemble::avg_right_degree() const { return 1.0 / integral(rho); }

LdpcBound ldpc_cycles_bound(const LdpcEnsemble& ens, double alpha) {
  ens.validate();
  if (!(alpha >= 0.0)) throw DomainError("ldpc: alpha must be nonnegative");
  LdpcBound b;
  b.design_rate = ens.design_rate();
  b.avg_right_degree = ens.avg_right_degree();
  double scale = (1.0 - b.design_rate) * b.avg_right_degree;
  if (!(scale > 0.0)) throw DomainError("ldpc: (1 - R_d) a_R must be positive");
  b.beta = alpha / scale;
  ExtendedReal f = f_delta(b.beta);
  b.refined.raw = f.is_infinite() ? 0.0 : 2.0 * std::exp(-ens.n * f.value());
  b.azuma.raw = 2.0 * std::exp(-0.5 * b.beta * b.beta * ens.n);
  return b;
}

}  // namespace tailforge
