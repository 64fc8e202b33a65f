#pragma once

#include <cstdint>

namespace ptide {

// Splittable counter-based generator used for all experiment randomness.
// std::mt19937 + std::normal_distribution are avoided on purpose: the
// distributions are implementation-defined, and run outputs must be
// byte-identical for a given seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of mantissa.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Standard normal via Box-Muller (polar-free form, deterministic).
  double gaussian();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Derives an independent per-run stream from a master seed, so that sweep
// parallelism and run ordering cannot change results.
std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t stream_id);

}  // namespace ptide
