#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace decaysched {

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Derives a child seed from a master seed and a path of stream labels, e.g.
// derive_seed(seed, {replication, kServiceStream, job}). Stateless, so any
// replication can be regenerated in isolation.
std::uint64_t derive_seed(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> path);

// Seedable generator with platform-independent output. The engine is
// mt19937_64 (whose sequence is fixed by the standard); the conversions to
// doubles and bounded integers are done here because the standard
// distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform();

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform on (0, 1].
  double uniform_open_closed() { return 1.0 - uniform(); }

  // Uniform integer on {lo, ..., hi}; requires lo <= hi.
  int uniform_int(int lo, int hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace decaysched
