#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

// Deterministic, splittable random streams. The generator and both
// distributions are fully specified here (no std::*_distribution, whose
// output is implementation-defined), so sample streams are reproducible
// bit-for-bit for a given seed on any platform.

namespace infoflux {

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform on [0, 1), 53-bit resolution
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // standard normal via Box-Muller; returns one of the pair, discards the other
  double normal() noexcept {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
};

// Independent stream for a given master seed and index. Streams for distinct
// indices are decorrelated by the SplitMix64 finalizer, and the mapping is a
// pure function, so sample i is identical no matter how many samples are
// drawn or on which worker.
inline SplitMix64 derive_stream(std::uint64_t master_seed, std::uint64_t index) {
  SplitMix64 mixer(master_seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  return SplitMix64(mixer.next());
}

}  // namespace infoflux
