#include "ptide/rng.hpp"

#include <cmath>
#include <numbers>

namespace ptide {

double SplitMix64::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller on two fresh uniforms; u1 bounded away from 0.
  double u1 = next_double();
  double u2 = next_double();
  if (u1 < 0x1.0p-53) u1 = 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
  SplitMix64 g(master_seed ^ (0x5851f42d4c957f2dULL * (stream_id + 1)));
  g.next_u64();
  return g.next_u64();
}

}  // namespace ptide
