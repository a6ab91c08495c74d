#pragma once

#include <cstdint>
#include <random>

namespace gadgetlab {

/// SplitMix64 step; also used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for stream `stream` of a run seeded with `seed`. Deterministic and
/// order-free, so per-index generation can run in any schedule.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Portable generator: std::mt19937_64 (fully specified by the standard) with
/// our own reductions, because the standard distributions are
/// implementation-defined.
///
///   below(n)    rejection sampling on the top of the 64-bit range
///   uniform()   (x >> 11) * 2^-53
///   bernoulli(p) uniform() < p
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t n);
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gadgetlab
