#pragma once

#include <array>
#include <cstdint>

namespace fbs {

/// (seed, stream) fully determines all randomness. Identical inputs give
/// bit-identical draws within one build.
struct SeedSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Philox4x32-10 block function (counter-based, stateless).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// 64-bit avalanche mix used to derive keys from (seed, stream) pairs.
std::uint64_t mix64(std::uint64_t a, std::uint64_t b);

/// Sequential view of one Philox substream. The key is derived from
/// (seed, stream); the counter carries (block index, substream, purpose), so
/// different substreams and purposes of the same SeedSpec never overlap.
class RandomStream {
public:
  enum class Purpose : std::uint32_t {
    field_noise = 0,
    scan_configs = 1,
    shifts = 2,
  };

  RandomStream(SeedSpec seed, std::uint64_t substream, Purpose purpose);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0,1), 53-bit resolution.
  double next_unit();
  /// Uniform on [lo, hi).
  double next_uniform(double lo, double hi);
  /// Uniform integer in [lo, hi] (small ranges; modulo reduction).
  std::uint64_t next_index(std::uint64_t lo, std::uint64_t hi);
  /// Standard normal via Box-Muller, two per Philox block.
  double next_normal();

private:
  std::array<std::uint32_t, 2> key_;
  std::uint32_t substream_lo_;
  std::uint32_t tag_;
  std::uint64_t block_ = 0;
  double cached_normal_ = 0.0;
  bool have_cached_ = false;

  std::array<std::uint32_t, 4> next_block();
};

}  // namespace fbs
