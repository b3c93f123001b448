#include <cmath>
#include <complex>
#include <numeric>

#include "tailforge/codingapps.hpp"
#include "tailforge/rng.hpp"

namespace tailforge {

namespace {
constexpr double kPi = 3.14159265358979323846;

double psk_phase(int k, int M) { return (2.0 * k + 1.0) * kPi / M; }
}  // namespace

void OfdmModel::validate() const {
  if (n < 1) throw DomainError("ofdm: n must be at least 1");
  if (M < 2) throw DomainError("ofdm: PSK order must be at least 2");
}

OfdmBounds ofdm_cf_bounds(const OfdmModel& model, double alpha) {
  model.validate();
  if (!(alpha >= 0.0)) throw DomainError("ofdm: alpha must be nonnegative");
  OfdmBounds b;
  b.azuma.raw = 2.0 * std::exp(-alpha * alpha / 8.0);
  SmallDeviationBound s = small_deviation_bound(0.5, alpha / 2.0, model.n);
  b.refined = s.finite_n;
  b.refined_limit = s.limit;
  return b;
}

double ofdm_trig_sum(int n, int M) {
  OfdmModel{n, M}.validate();
  double s = 0.0;
  for (int k = 0; k < M; ++k) {
    double v = std::sin(kPi * k / M);
    s += v * v;
  }
  return 4.0 * s / (static_cast<double>(n) * M);
}

Rational ofdm_trig_sum_exact(int n, int M) {
  OfdmModel{n, M}.validate();
  // 4/(nM) * M/2
  std::int64_t num = 4LL * M, den = 2LL * n * M;
  std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

double ofdm_crest_factor_grid(const std::vector<double>& phases) {
  const std::size_t n = phases.size();
  if (n == 0) throw DomainError("ofdm: empty symbol vector");
  const std::size_t grid = 16 * n;
  std::vector<std::complex<double>> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = std::polar(1.0, phases[k]);
  double best = 0.0;
  for (std::size_t j = 0; j < grid; ++j) {
    std::complex<double> z = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid));
    std::complex<double> acc = 0.0;
    for (std::size_t k = n; k-- > 0;) acc = acc * z + x[k];  // Horner
    best = std::max(best, std::abs(acc));
  }
  return best / std::sqrt(static_cast<double>(n));
}

OfdmCheckReport ofdm_martingale_check(const OfdmModel& model, int trials, std::uint64_t seed, int inner,
                                      int threads) {
  model.validate();
  if (trials < 1) throw DomainError("ofdm: trials must be positive");
  if (inner < 1) throw DomainError("ofdm: inner sample count must be positive");
  const int n = model.n, M = model.M;
  const double bound = 2.0 / std::sqrt(static_cast<double>(n));

  std::vector<double> est(trials), worst(trials);
  Rng root(seed);
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
    Rng rng = root.substream(t);
    auto draw = [&] { return psk_phase(static_cast<int>(rng.below(M)), M); };
    int i = 1 + static_cast<int>(rng.below(n));
    std::vector<double> u(n), v(n);
    for (int k = 0; k < i; ++k) u[k] = draw();  // X_0 .. X_{i-1}
    double sum = 0.0, w = 0.0;
    for (int s = 0; s < inner; ++s) {
      for (int k = i; k < n; ++k) u[k] = draw();
      v = u;
      v[i - 1] = draw();
      double diff = ofdm_crest_factor_grid(u) - ofdm_crest_factor_grid(v);
      w = std::max(w, std::abs(diff));
      sum += diff;
    }
    est[t] = sum / inner;
    worst[t] = w;
  });

  OfdmCheckReport r;
  r.trials = trials;
  r.jump_bound = bound;
  r.variance_target = 2.0 / n;
  double s1 = 0.0, s2 = 0.0;
  for (int t = 0; t < trials; ++t) {
    double a = std::abs(est[t]);
    r.max_increment = std::max(r.max_increment, a);
    if (worst[t] > bound * (1.0 + 1e-12)) ++r.violations;
    double sq = est[t] * est[t];
    s1 += sq;
    s2 += sq * sq;
  }
  r.second_moment = s1 / trials;
  double var = trials > 1 ? std::max(0.0, (s2 - trials * r.second_moment * r.second_moment) / (trials - 1)) : 0.0;
  r.second_moment_se = std::sqrt(var / trials);
  Rational exact = ofdm_trig_sum_exact(n, M);
  r.trig_identity_ok = std::abs(ofdm_trig_sum(n, M) - static_cast<double>(exact.num) / exact.den) <= 1e-12 &&
                       exact.num * n == 2 * exact.den;
  return r;
}

}  // namespace tailforge
