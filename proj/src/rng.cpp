#include "tsa/rng.hpp"

#include "tsa/error.hpp"

namespace tsa {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed ^ splitmix64(stream))) {}

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::invalid_argument, "uniform_index bound is zero");
  // Smallest multiple-aligned threshold; values below it are rejected.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

}  // namespace tsa
