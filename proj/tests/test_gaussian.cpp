#include "doctest.h"

#include <cmath>
#include <vector>

#include "fbs/field_model.hpp"
#include "fbs/gaussian.hpp"
#include "fbs/lnd.hpp"
#include "fbs/rng.hpp"

using namespace fbs;

namespace {

/// Independent route to the conditional variance: conjugate-gradient
/// minimization of E[(Y - sum alpha_j B(s^j))^2] over alpha, touching neither
/// the eigendecomposition nor the pseudo-inverse policy.
double infimum_by_minimization(const LinearFunctional& f,
                               const std::vector<SpacePoint>& conditioning,
                               const HurstVector& h) {
  const std::size_t n = conditioning.size();
  std::vector<std::vector<double>> k(n, std::vector<double>(n));
  std::vector<double> c(n);
  for (std::size_t i2 = 0; i2 < n; ++i2) {
    for (std::size_t j = 0; j < n; ++j)
      k[i2][j] = covariance(conditioning[i2], conditioning[j], h);
    double ci = 0.0;
    for (std::size_t p = 0; p < f.points.size(); ++p)
      ci += f.weights[p] * covariance(f.points[p], conditioning[i2], h);
    c[i2] = ci;
  }
  double var_y = 0.0;
  for (std::size_t p = 0; p < f.points.size(); ++p)
    for (std::size_t q = 0; q < f.points.size(); ++q)
      var_y += f.weights[p] * f.weights[q] * covariance(f.points[p], f.points[q], h);

  // CG on K alpha = c.
  std::vector<double> alpha(n, 0.0), residual = c, direction = c;
  double res_sq = 0.0;
  for (double v : residual) res_sq += v * v;
  for (std::size_t iter = 0; iter < 10 * n + 50 && res_sq > 1e-24; ++iter) {
    std::vector<double> kd(n, 0.0);
    for (std::size_t i2 = 0; i2 < n; ++i2)
      for (std::size_t j = 0; j < n; ++j) kd[i2] += k[i2][j] * direction[j];
    double dkd = 0.0;
    for (std::size_t i2 = 0; i2 < n; ++i2) dkd += direction[i2] * kd[i2];
    if (dkd <= 0.0) break;
    const double step = res_sq / dkd;
    double next_res_sq = 0.0;
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      alpha[i2] += step * direction[i2];
      residual[i2] -= step * kd[i2];
      next_res_sq += residual[i2] * residual[i2];
    }
    const double ratio = next_res_sq / res_sq;
    for (std::size_t i2 = 0; i2 < n; ++i2)
      direction[i2] = residual[i2] + ratio * direction[i2];
    res_sq = next_res_sq;
  }

  double quad = 0.0, lin = 0.0;
  for (std::size_t i2 = 0; i2 < n; ++i2) {
    lin += alpha[i2] * c[i2];
    for (std::size_t j = 0; j < n; ++j) quad += alpha[i2] * k[i2][j] * alpha[j];
  }
  return var_y - 2.0 * lin + quad;
}

}  // namespace

TEST_CASE("gram pinned values") {
  const HurstVector h2({0.5, 0.5}, 1);
  const GramMatrix single = gram({{1.0, 1.0}}, h2);
  CHECK(single.size() == 1);
  CHECK(single(0, 0) == doctest::Approx(4.0));

  const HurstVector h1({0.5}, 1);
  const GramMatrix two = gram({{1.0}, {2.0}}, h1);
  CHECK(two(0, 0) == doctest::Approx(2.0));
  CHECK(two(0, 1) == doctest::Approx(2.0));
  CHECK(two(1, 0) == doctest::Approx(2.0));
  CHECK(two(1, 1) == doctest::Approx(4.0));

  const GramMatrix dup = gram({{0.7}, {0.7}, {0.9}}, h1);
  for (std::size_t j = 0; j < 3; ++j) CHECK(dup(0, j) == dup(1, j));

  CHECK_THROWS_AS(gram({}, h1), std::invalid_argument);
}

TEST_CASE("spd_solve pinned values and pseudo-inverse policy") {
  const HurstVector h1({0.5}, 1);
  {
    const GramMatrix m(std::vector<double>{2.0}, {{1.0}}, h1);
    const std::vector<double> rhs{4.0};
    CHECK(spd_solve(m, rhs)[0] == doctest::Approx(2.0).epsilon(1e-12));
  }
  {
    const GramMatrix m = gram({{1.0}, {2.0}}, h1);
    const std::vector<double> rhs{2.0, 4.0};
    const auto x = spd_solve(m, rhs);
    CHECK(x[0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-10));
  }
  {
    // Duplicated point: rank-deficient with rhs in range. The minimum-norm
    // solution has zero component along the null direction (1, -1).
    const GramMatrix m = gram({{1.0}, {1.0}}, h1);
    const std::vector<double> rhs{2.0, 2.0};
    const auto x = spd_solve(m, rhs);
    const double residual0 = m(0, 0) * x[0] + m(0, 1) * x[1] - rhs[0];
    const double residual1 = m(1, 0) * x[0] + m(1, 1) * x[1] - rhs[1];
    CHECK(std::abs(residual0) < 1e-8);
    CHECK(std::abs(residual1) < 1e-8);
    CHECK(x[0] - x[1] == doctest::Approx(0.0).epsilon(1e-10));
  }
  {
    const GramMatrix m = gram({{1.0}, {2.0}}, h1);
    const std::vector<double> rhs{1.0};
    CHECK_THROWS_AS(spd_solve(m, rhs), std::invalid_argument);
  }
}

TEST_CASE("conditional variance pinned values") {
  const HurstVector h1({0.5}, 1);
  const LinearFunctional b2{{{2.0}}, {1.0}};
  CHECK(conditional_variance(b2, {{1.0}}, h1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(conditional_variance(b2, {}, h1) == doctest::Approx(4.0).epsilon(1e-12));

  const LinearFunctional zero{{{1.5}, {1.5}}, {1.0, -1.0}};
  CHECK(conditional_variance(zero, {{0.5}}, h1) == 0.0);

  // Conditioning geometry with an exact rectangle-increment answer.
  const HurstVector h2({0.5, 0.5}, 1);
  const Configuration fig = figure1_configuration();
  const LinearFunctional increment{{fig.t, fig.s}, {1.0, -1.0}};
  CHECK(conditional_variance(increment, fig.conditioning, h2) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("conditioning can only reduce variance") {
  const HurstVector h({0.6, 0.35}, 1);
  RandomStream rng({31, 0}, 0, RandomStream::Purpose::scan_configs);
  for (int trial = 0; trial < 1000; ++trial) {
    auto pt = [&]() {
      return SpacePoint{rng.next_uniform(0.1, 1.0), rng.next_uniform(0.1, 1.0)};
    };
    const LinearFunctional f{{pt(), pt()}, {1.0, -1.0}};
    std::vector<SpacePoint> conditioning;
    double prev = conditional_variance(f, conditioning, h);
    CHECK(prev >= 0.0);
    const auto extra = 1 + rng.next_index(0, 3);
    for (std::size_t j = 0; j < extra; ++j) {
      conditioning.push_back(pt());
      const double next = conditional_variance(f, conditioning, h);
      CHECK(next >= 0.0);
      CHECK(next <= prev + 1e-9);
      prev = next;
    }
  }
}

TEST_CASE("agrees with the explicit infimum over predictors") {
  const HurstVector h({0.5, 0.4}, 1);
  RandomStream rng({37, 0}, 0, RandomStream::Purpose::scan_configs);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 60; ++trial) {
    auto pt = [&]() {
      return SpacePoint{rng.next_uniform(0.1, 1.0), rng.next_uniform(0.1, 1.0)};
    };
    const LinearFunctional f{{pt(), pt()}, {1.0, -1.0}};
    std::vector<SpacePoint> conditioning;
    const auto n = 1 + rng.next_index(0, 2);
    for (std::size_t j = 0; j < n; ++j) conditioning.push_back(pt());

    // Keep the oracle on well-conditioned systems; the policy path is
    // exercised on the degenerate ones elsewhere.
    const GramMatrix k = gram(conditioning, h);
    double min_diag = 1e300, max_diag = 0.0;
    for (std::size_t i2 = 0; i2 < k.size(); ++i2) {
      min_diag = std::min(min_diag, k(i2, i2));
      max_diag = std::max(max_diag, k(i2, i2));
    }
    if (min_diag < 1e-3 * max_diag) continue;

    const double via_schur = conditional_variance(f, conditioning, h);
    const double via_infimum = infimum_by_minimization(f, conditioning, h);
    ++checked;
    const double scale = std::max(std::abs(via_infimum), 1e-12);
    CHECK(std::abs(via_schur - via_infimum) / scale < 1e-6);
  }
  CHECK(checked >= 50);
}

TEST_CASE("permutation of conditioning points is immaterial") {
  const HurstVector h({0.5, 0.5}, 1);
  RandomStream rng({41, 0}, 0, RandomStream::Purpose::scan_configs);
  auto pt = [&]() {
    return SpacePoint{rng.next_uniform(0.1, 1.0), rng.next_uniform(0.1, 1.0)};
  };
  for (int trial = 0; trial < 200; ++trial) {
    const LinearFunctional f{{pt(), pt()}, {1.0, -1.0}};
    std::vector<SpacePoint> cond{pt(), pt(), pt(), pt()};
    const double base = conditional_variance(f, cond, h);
    std::vector<SpacePoint> rotated{cond[2], cond[0], cond[3], cond[1]};
    const double permuted = conditional_variance(f, rotated, h);
    CHECK(base == doctest::Approx(permuted).epsilon(1e-10));
  }
}
