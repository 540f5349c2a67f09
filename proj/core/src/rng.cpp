#include "fbs/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fbs {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr, const std::array<std::uint32_t, 2>& key) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

inline double to_unit(std::uint64_t x) {
  // 53-bit mantissa, strictly inside (0,1).
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    philox_round(counter, key);
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return counter;
}

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b * 0x9E3779B97F4A7C15ull);
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

RandomStream::RandomStream(SeedSpec seed, std::uint64_t substream, Purpose purpose) {
  if (substream > 0xFFFFFFFFull)
    throw std::invalid_argument("RandomStream: substream index must fit in 32 bits");
  const std::uint64_t key = mix64(seed.seed, seed.stream);
  key_ = {static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  substream_lo_ = static_cast<std::uint32_t>(substream);
  tag_ = static_cast<std::uint32_t>(purpose);
}

std::array<std::uint32_t, 4> RandomStream::next_block() {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      substream_lo_, tag_};
  ++block_;
  return philox4x32(ctr, key_);
}

std::uint64_t RandomStream::next_u64() {
  const auto b = next_block();
  return static_cast<std::uint64_t>(b[0]) | (static_cast<std::uint64_t>(b[1]) << 32);
}

double RandomStream::next_unit() { return to_unit(next_u64()); }

double RandomStream::next_uniform(double lo, double hi) {
  return lo + (hi - lo) * next_unit();
}

std::uint64_t RandomStream::next_index(std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw std::invalid_argument("RandomStream: empty index range");
  return lo + next_u64() % (hi - lo + 1);
}

double RandomStream::next_normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_normal_;
  }
  const auto b = next_block();
  const std::uint64_t w0 = static_cast<std::uint64_t>(b[0]) | (static_cast<std::uint64_t>(b[1]) << 32);
  const std::uint64_t w1 = static_cast<std::uint64_t>(b[2]) | (static_cast<std::uint64_t>(b[3]) << 32);
  const double u1 = to_unit(w0);
  const double u2 = to_unit(w1);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  have_cached_ = true;
  return radius * std::cos(angle);
}

}  // namespace fbs
