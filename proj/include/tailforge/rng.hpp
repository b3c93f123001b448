#ifndef TAILFORGE_RNG_HPP
#define TAILFORGE_RNG_HPP

#include <cstdint>
#include <functional>
#include <random>

namespace tailforge {

// Seedable generator with deterministic substreams: substream(k) of a given
// Rng always yields the same sequence, independent of how work is split
// across threads.
class Rng {
public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);
  Rng substream(std::uint64_t index) const;

  result_type operator()() { return engine_(); }
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  double uniform();                     // [0, 1)
  std::uint64_t below(std::uint64_t n); // uniform on {0, ..., n-1}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Worker count: explicit request if positive, else TAILFORGE_THREADS, else
// hardware concurrency; never below 1.
int worker_count(int requested = 0);

// Runs body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace tailforge

#endif
