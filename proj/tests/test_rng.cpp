#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "fbs/rng.hpp"

using namespace fbs;

TEST_CASE("philox4x32-10 known-answer vectors") {
  // Reference vectors published with the original counter-based RNG suite.
  const auto zero = philox4x32({0u, 0u, 0u, 0u}, {0u, 0u});
  CHECK(zero[0] == 0x6627e8d5u);
  CHECK(zero[1] == 0xe169c58du);
  CHECK(zero[2] == 0xbc57ac4cu);
  CHECK(zero[3] == 0x9b00dbd8u);

  const auto ones = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                               {0xffffffffu, 0xffffffffu});
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);
}

TEST_CASE("streams are deterministic and distinct") {
  RandomStream a({42, 7}, 3, RandomStream::Purpose::field_noise);
  RandomStream b({42, 7}, 3, RandomStream::Purpose::field_noise);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  RandomStream c({42, 7}, 4, RandomStream::Purpose::field_noise);
  RandomStream d({42, 7}, 3, RandomStream::Purpose::scan_configs);
  RandomStream e({42, 8}, 3, RandomStream::Purpose::field_noise);
  RandomStream base({42, 7}, 3, RandomStream::Purpose::field_noise);
  int equal_c = 0, equal_d = 0, equal_e = 0;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t ref = base.next_u64();
    equal_c += c.next_u64() == ref;
    equal_d += d.next_u64() == ref;
    equal_e += e.next_u64() == ref;
  }
  CHECK(equal_c == 0);
  CHECK(equal_d == 0);
  CHECK(equal_e == 0);
}

TEST_CASE("unit draws stay inside (0,1)") {
  RandomStream rng({1, 2}, 0, RandomStream::Purpose::scan_configs);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_unit();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("normal stream has standard moments") {
  RandomStream rng({2024, 0}, 0, RandomStream::Purpose::field_noise);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.next_normal();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  // 5 standard errors for mean (1/sqrt(n)) and variance (sqrt(2/n)).
  CHECK(std::abs(mean) < 5.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) < 5.0 * std::sqrt(2.0 / n));
}
