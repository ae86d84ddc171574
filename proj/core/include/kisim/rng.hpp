#pragma once

#include <array>
#include <cstdint>

namespace kisim {

/// Counter-based random number generator (Philox-4x32-10).
///
/// Every draw is a pure function of (key, counter), so independent streams
/// can be addressed directly: noise draws are keyed by (seed; shot, gate,
/// lane, tag) and never depend on execution order. Serial and multi-threaded
/// runs therefore produce identical random sequences.
class Philox {
 public:
  explicit Philox(std::uint64_t seed) noexcept
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)} {}

  /// Four 32-bit words for counter (c0, c1, c2, c3).
  std::array<std::uint32_t, 4> block(std::uint32_t c0, std::uint32_t c1,
                                     std::uint32_t c2,
                                     std::uint32_t c3) const noexcept {
    std::uint32_t k0 = key_[0];
    std::uint32_t k1 = key_[1];
    std::array<std::uint32_t, 4> x{c0, c1, c2, c3};
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = kMul0 * static_cast<std::uint64_t>(x[0]);
      const std::uint64_t p1 = kMul1 * static_cast<std::uint64_t>(x[2]);
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    return x;
  }

  /// Uniform double in [0, 1) from counter (c0, c1, c2, c3).
  double uniform(std::uint32_t c0, std::uint32_t c1, std::uint32_t c2,
                 std::uint32_t c3) const noexcept {
    const auto words = block(c0, c1, c2, c3);
    const std::uint64_t bits =
        (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound) via 64-bit multiply-shift.
  std::uint64_t below(std::uint64_t bound, std::uint32_t c0, std::uint32_t c1,
                      std::uint32_t c2, std::uint32_t c3) const noexcept {
    const auto words = block(c0, c1, c2, c3);
    const std::uint64_t bits =
        (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
    // 128-bit multiply keeps the mapping unbiased enough for any bound
    // that fits a 53-bit sample space; bounds here are < 2^32.
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(bits) * bound;
    return static_cast<std::uint64_t>(wide >> 64);
  }

  /// Deterministically derive a child seed, for per-cell substreams.
  std::uint64_t derive(std::uint32_t a, std::uint32_t b,
                       std::uint32_t c) const noexcept {
    const auto words = block(a, b, c, 0x5eedULL);
    return (static_cast<std::uint64_t>(words[2]) << 32) | words[3];
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  std::array<std::uint32_t, 2> key_;
};

/// Counter tags separating independent uses of one seed.
namespace rng_tag {
inline constexpr std::uint32_t kGateNoise = 1;
inline constexpr std::uint32_t kPauliPick = 2;
inline constexpr std::uint32_t kDamping = 3;
inline constexpr std::uint32_t kMeasure = 4;
inline constexpr std::uint32_t kReadout = 5;
inline constexpr std::uint32_t kBootstrap = 6;
inline constexpr std::uint32_t kFold = 7;
}  // namespace rng_tag

}  // namespace kisim
