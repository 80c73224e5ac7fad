#pragma once

#include <cstdint>
#include <random>

namespace condlab {

// Thin wrapper around mt19937_64. The standard pins the engine's output
// sequence for a given seed, and the transforms below stay away from the
// implementation-defined std distributions, so every stream here is
// bit-reproducible across platforms and compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // uniform on [0, 1), 53 random bits
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  // uniform on {0, ..., bound-1} by rejection
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 eng_;
};

// One fresh seed per (master, index) pair; used to hand every run, grid
// point and worker its own independent stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace condlab
