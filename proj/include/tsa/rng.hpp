#pragma once

#include <cstdint>
#include <random>

namespace tsa {

// Portable seeded generator: std::mt19937_64 (output sequence fixed by the
// standard) with hand-rolled integer/real mapping so that no
// implementation-defined std:: distribution is involved.
//
// Streams: Rng(seed, stream) seeds the engine with
// splitmix64(seed ^ splitmix64(stream)), giving independent reproducible
// streams per run index.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, bound); bound must be > 0. Rejection sampling.
  std::uint64_t uniform_index(std::uint64_t bound);

  // Uniform real in [0, 1) with 53 random bits.
  double uniform01();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace tsa
