#pragma once

#include <cstdint>
#include <limits>

namespace driftguard {

/// Small counter-seeded generator. Every sample, resample, and run derives a
/// fresh engine from (master seed, stream tag, index), so results never
/// depend on the order in which work items are evaluated.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Stream tags keep the randomness of unrelated consumers disjoint.
enum class StreamTag : std::uint64_t {
  kSample = 1,
  kBootstrap = 2,
  kRun = 3,
  kCalibration = 4,
  kTraining = 5,
  kScore = 6,
};

std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for item `index` of stream `tag` under `seed`.
std::uint64_t derive_seed(std::uint64_t seed, StreamTag tag, std::uint64_t index) noexcept;

inline SplitMix64 make_engine(std::uint64_t seed, StreamTag tag, std::uint64_t index) noexcept {
  return SplitMix64(derive_seed(seed, tag, index));
}

}  // namespace driftguard
