#include "tailforge/validate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace tailforge {

namespace {

constexpr double kWilsonZ = 1.959963984540054;
constexpr std::int64_t kMaxDenominator = 1000000;
constexpr double kBin = 1e-12;
constexpr std::size_t kMaxStates = 2000000;

// Smallest q <= kMaxDenominator with v ~ p/q, or 0 if none.
std::int64_t denominator_of(double v) {
  double tol = 1e-12 * std::max(1.0, std::abs(v));
  double x = v;
  std::int64_t h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // convergents h/k
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(x);
    std::int64_t ai = static_cast<std::int64_t>(a);
    std::int64_t h = ai * h0 + h1, k = ai * k0 + k1;
    if (k > kMaxDenominator) return 0;
    h1 = h0; h0 = h;
    k1 = k0; k0 = k;
    if (std::abs(v - static_cast<double>(h) / static_cast<double>(k)) <= tol) return k;
    double frac = x - a;
    if (frac < 1e-15) return 0;
    x = 1.0 / frac;
  }
  return 0;
}

std::int64_t threshold_key(double scaled) {
  double tol = 1e-9 * std::max(1.0, std::abs(scaled));
  double r = std::round(scaled);
  if (std::abs(scaled - r) <= tol) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::ceil(scaled));
}

}  // namespace

IncrementLaw::IncrementLaw(std::vector<double> values, std::vector<double> probs)
    : values_(std::move(values)), probs_(std::move(probs)) {
  if (values_.empty() || values_.size() != probs_.size())
    throw DomainError("increment law: values and probs must be nonempty and of equal length");
  double s = 0.0, mean = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) throw DomainError("increment law: non-finite value");
    if (!(probs_[i] >= 0.0)) throw DomainError("increment law: negative probability");
    s += probs_[i];
    mean += probs_[i] * values_[i];
    scale = std::max(scale, std::abs(values_[i]));
  }
  if (std::abs(s - 1.0) > 1e-9) throw DomainError("increment law: probabilities must sum to one");
  if (std::abs(mean) > 1e-12 * std::max(1.0, scale)) throw DomainError("increment law: mean must be zero");
  if (scale == 0.0) throw DomainError("increment law: degenerate at zero");
  double c = 0.0;
  for (double p : probs_) cdf_.push_back(c += p / s);
  cdf_.back() = 1.0;
}

double IncrementLaw::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    if (probs_[i] > 0.0) m = std::max(m, std::abs(values_[i]));
  return m;
}

double IncrementLaw::variance() const { return moment(2); }

double IncrementLaw::moment(int l) const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) s += probs_[i] * std::pow(values_[i], l);
  return s;
}

double IncrementLaw::sample(Rng& rng) const {
  double u = rng.uniform();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return values_[static_cast<std::size_t>(it - cdf_.begin())];
}

IncrementLaw IncrementLaw::negated() const {
  std::vector<double> v(values_);
  for (double& x : v) x = -x;
  return IncrementLaw(v, probs_);
}

IncrementLaw TwoPointIncrement::law() const {
  if (!(d > 0.0)) throw DomainError("two-point increment: d must be positive");
  if (!(eps > 0.0 && eps <= 0.5)) throw DomainError("two-point increment: eps must lie in (0, 1/2]");
  return IncrementLaw({d, -eps * d / (1.0 - eps)}, {eps, 1.0 - eps});
}

IncrementLaw symmetric_pm_one() { return IncrementLaw({1.0, -1.0}, {0.5, 0.5}); }

IncrementLaw centered_bernoulli(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("centered_bernoulli: p must lie in (0, 1)");
  return IncrementLaw({1.0 - p, -p}, {p, 1.0 - p});
}

TailResult exact_tail_dp(const IncrementLaw& law, const TailQuery& q) {
  if (q.n < 1) throw DomainError("exact_tail_dp: n must be at least 1");
  TailResult res;

  // lattice scale
  std::int64_t L = 1;
  bool lattice = true;
  for (double v : law.values()) {
    std::int64_t den = denominator_of(v);
    if (den == 0) { lattice = false; break; }
    L = std::lcm(L, den);
    if (L > kMaxDenominator) { lattice = false; break; }
  }
  double scale = lattice ? static_cast<double>(L) : 1.0 / kBin;
  std::vector<std::int64_t> keys;
  for (double v : law.values()) keys.push_back(std::llround(v * scale));

  // distinct sums are bounded by both the multiset count and the lattice span
  {
    std::size_t s = keys.size();
    double multisets = std::exp(std::lgamma(q.n + s + 0.0) - std::lgamma(q.n + 1.0) - std::lgamma(s + 0.0));
    auto [lo, hi] = std::minmax_element(keys.begin(), keys.end());
    double span = static_cast<double>(q.n) * static_cast<double>(*hi - *lo) + 1.0;
    if (std::min(multisets, span) > static_cast<double>(kMaxStates))
      throw DomainError("exact_tail_dp: infeasible size (too many lattice states)");
  }

  std::map<std::int64_t, double> cur{{0, 1.0}};
  for (int step = 0; step < q.n; ++step) {
    std::map<std::int64_t, double> next;
    for (const auto& [k, p] : cur)
      for (std::size_t i = 0; i < keys.size(); ++i)
        if (law.probs()[i] > 0.0) next[k + keys[i]] += p * law.probs()[i];
    if (next.size() > kMaxStates) throw DomainError("exact_tail_dp: infeasible size (too many lattice states)");
    cur.swap(next);
  }

  std::int64_t t = threshold_key(q.threshold * scale);
  if (!lattice) t -= (q.n + 1) / 2;  // each step rounds by at most half a bin
  double prob = 0.0;
  for (const auto& [k, p] : cur) {
    bool hit = q.sides == Sidedness::two_sided ? (k >= t || -k >= t) : k >= t;
    if (hit) prob += p;
  }
  res.probability = std::min(1.0, prob);
  res.exact_lattice = lattice;
  res.bin_error = lattice ? 0.0 : q.n * kBin / 2.0;
  res.states = cur.size();
  return res;
}

double binomial_tail(int n, double p, int k) {
  if (n < 0) throw DomainError("binomial_tail: n must be nonnegative");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial_tail: p must lie in [0, 1]");
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  double s = 0.0, lp = std::log(p), lq = std::log1p(-p);
  for (int j = n; j >= k; --j)
    s += std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) + j * lp + (n - j) * lq);
  return std::min(1.0, s);
}

bool Sandwich::holds() const {
  const double slack = 1e-12;
  return lower <= exact * (1.0 + slack) && exact <= upper * (1.0 + slack);
}

Sandwich types_sandwich_check(double p, int n, double r) {
  if (!(p > 0.0 && p <= 0.5)) throw DomainError("types_sandwich_check: p must lie in (0, 1/2]");
  if (n < 1) throw DomainError("types_sandwich_check: n must be at least 1");
  r = clamp_to_domain(r, p, 1.0);
  if (!(r >= p && r <= 1.0)) throw DomainError("types_sandwich_check: r must lie in [p, 1]");
  Sandwich s;
  s.k = static_cast<int>(threshold_key(n * r));
  double rl = static_cast<double>(s.k) / n;  // lattice point at or above r
  double D = binary_divergence(rl, p);
  s.upper = std::exp(-n * D);
  s.lower = s.upper / (n + 1.0);
  s.exact = binomial_tail(n, p, s.k);
  return s;
}

WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t trials) {
  if (trials == 0) throw DomainError("wilson_interval: zero trials");
  double n = static_cast<double>(trials), ph = static_cast<double>(hits) / n, z2 = kWilsonZ * kWilsonZ;
  double denom = 1.0 + z2 / n;
  double centre = (ph + z2 / (2.0 * n)) / denom;
  double half = kWilsonZ / denom * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

MonteCarloResult monte_carlo_event(const std::function<bool(Rng&)>& event, std::uint64_t trials, std::uint64_t seed,
                                   int threads) {
  if (trials == 0) throw DomainError("monte_carlo: zero trials");
  if (trials < 100) throw DomainError("monte_carlo: at least 100 trials required");
  // chunk trials so each task is a fixed range, independent of thread count
  const std::uint64_t chunk = 1024;
  std::uint64_t chunks = (trials + chunk - 1) / chunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  Rng root(seed);
  parallel_for(chunks, threads, [&](std::size_t c) {
    std::uint64_t lo = c * chunk, hi = std::min(trials, lo + chunk), h = 0;
    for (std::uint64_t t = lo; t < hi; ++t) {
      Rng rng = root.substream(t);
      if (event(rng)) ++h;
    }
    hits[c] = h;
  });
  MonteCarloResult r;
  r.trials = trials;
  r.hits = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  r.estimate = static_cast<double>(r.hits) / static_cast<double>(trials);
  r.ci = wilson_interval(r.hits, trials);
  return r;
}

MonteCarloResult monte_carlo_tail(const IncrementLaw& law, const TailQuery& q, std::uint64_t trials,
                                  std::uint64_t seed, int threads) {
  if (q.n < 1) throw DomainError("monte_carlo_tail: n must be at least 1");
  double tol = 1e-9 * std::max(1.0, std::abs(q.threshold));
  return monte_carlo_event(
      [&](Rng& rng) {
        double s = 0.0;
        for (int i = 0; i < q.n; ++i) s += law.sample(rng);
        double stat = q.sides == Sidedness::two_sided ? std::abs(s) : s;
        return stat >= q.threshold - tol;
      },
      trials, seed, threads);
}

std::vector<NamedBound> analytic_tail_bounds(const IncrementLaw& law, const TailQuery& q) {
  if (q.n < 1) throw DomainError("analytic_tail_bounds: n must be at least 1");
  const double d = law.max_abs();
  const double gamma = std::min(1.0, law.variance() / (d * d));
  const double delta = q.threshold / (q.n * d);
  const double mult = q.sides == Sidedness::two_sided ? 2.0 : 1.0;
  auto bound = [&](const ExponentValue& e) {
    if (e.is_infinite()) return 0.0;
    return std::min(1.0, mult * std::exp(-q.n * e.value()));
  };
  std::vector<NamedBound> out;
  if (!(delta > 0.0)) {
    for (const char* name : {"azuma", "thm2", "thm3", "cor2", "cor3", "cor4", "thm4_m2", "thm4_m4", "thm4_m6"})
      out.push_back({name, 1.0});
    return out;
  }
  out.push_back({"azuma", bound(azuma_exponent(delta))});
  out.push_back({"thm2", bound(thm2_exponent(gamma, delta))});
  out.push_back({"thm3", bound(thm3_exponent(gamma, delta))});
  out.push_back({"cor2", bound(cor2_exponent(delta))});
  out.push_back({"cor3", bound(cor3_exponent(gamma, delta))});
  out.push_back({"cor4", bound(cor4_exponent(gamma, delta))});
  for (int m : {2, 4, 6}) {
    std::vector<double> g;
    for (int l = 2; l <= m; ++l) {
      double mu = law.moment(l);
      // two-sided needs the profile of both X and -X
      double v = q.sides == Sidedness::two_sided ? std::abs(mu) : std::max(0.0, mu);
      g.push_back(v / std::pow(d, l));
    }
    out.push_back({"thm4_m" + std::to_string(m), bound(thm4_exponent(MomentProfile(g), delta))});
  }
  return out;
}

Example3Result example3_comparison(double eps, double d, double x, int k) {
  if (!(eps > 0.0 && eps <= 0.5)) throw DomainError("example3: eps must lie in (0, 1/2]");
  if (!(d > 0.0)) throw DomainError("example3: d must be positive");
  if (!(x >= 0.0)) throw DomainError("example3: x must be nonnegative");
  if (k < 1) throw DomainError("example3: k must be at least 1");
  Example3Result r;
  TailResult ex = exact_tail_dp(TwoPointIncrement{d, eps}.law(), {k, k * x, Sidedness::one_sided});
  r.exact = ex.probability;
  if (x == 0.0) return r;
  r.azuma = std::min(1.0, std::exp(-k * x * x / (2.0 * d * d)));
  ExponentValue e = thm2_exponent(eps / (1.0 - eps), x / d);
  r.thm2 = e.is_infinite() ? 0.0 : std::min(1.0, std::exp(-k * e.value()));
  return r;
}

}  // namespace tailforge
