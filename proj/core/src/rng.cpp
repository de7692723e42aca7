#include "driftguard/rng.hpp"

namespace driftguard {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 33;
  x *= 0xFF51AFD7ED558CCDULL;
  x ^= x >> 33;
  x *= 0xC4CEB9FE1A85EC53ULL;
  x ^= x >> 33;
  return x;
}

std::uint64_t derive_seed(std::uint64_t seed, StreamTag tag, std::uint64_t index) noexcept {
  std::uint64_t h = mix64(seed ^ 0x6A09E667F3BCC908ULL);
  h = mix64(h ^ (static_cast<std::uint64_t>(tag) * 0x9E3779B97F4A7C15ULL));
  h = mix64(h + index * 0xD1B54A32D192ED03ULL + 1);
  return h;
}

}  // namespace driftguard
