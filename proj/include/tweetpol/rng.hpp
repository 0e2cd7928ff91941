#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace tweetpol {

/// PCG-XSH-RR with 64-bit state and 32-bit output.
///
/// The seed is used directly as the initial state (no warm-up step) with the
/// reference increment, so sequences are reproducible on every platform.
class Pcg32 {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;

  explicit Pcg32(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint32_t next() noexcept {
    const std::uint64_t old = state_;
    state_ = old * kMultiplier + kIncrement;
    const auto xorshifted = static_cast<std::uint32_t>(((old >> 18U) ^ old) >> 27U);
    const auto rot = static_cast<std::uint32_t>(old >> 59U);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31U));
  }

  /// Uniform draw in [0, bound) by rejection; bound must be > 0.
  std::uint32_t bounded(std::uint32_t bound) noexcept {
    const std::uint32_t threshold = (-bound) % bound;
    for (;;) {
      const std::uint32_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

/// In-place Fisher-Yates shuffle driven by `rng` (walks from the back).
template <typename T>
void fisher_yates(std::vector<T>& items, Pcg32& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = rng.bounded(static_cast<std::uint32_t>(i));
    std::swap(items[i - 1], items[j]);
  }
}

inline std::vector<std::size_t> shuffled_indices(std::size_t n, Pcg32& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  fisher_yates(order, rng);
  return order;
}

}  // namespace tweetpol
