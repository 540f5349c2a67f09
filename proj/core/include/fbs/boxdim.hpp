#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fbs/types.hpp"

namespace fbs {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
};

/// Ordinary least squares y = slope * x + intercept with the usual slope
/// standard error (0 when the fit is exact or has no residual dof).
LineFit ols_fit(std::span<const double> x, std::span<const double> y);

/// Covering counts per scale plus the fitted log-log slope. `fit_range` is the
/// half-open index window [first, last) of the scales actually regressed.
struct DimEstimate {
  std::vector<double> scales;
  std::vector<std::size_t> counts;
  double slope = 0.0;
  double stderr_ = 0.0;
  std::pair<std::size_t, std::size_t> fit_range{0, 0};
};

/// OLS of log counts against log(1/scale) over [first, last). Throws on a
/// window of fewer than two scales or nonpositive counts inside it.
std::pair<double, double> loglog_fit(std::span<const double> scales,
                                     std::span<const double> counts, std::size_t first,
                                     std::size_t last);

/// Default fit window: drop the two largest and two smallest scales when
/// enough remain (plateau and discreteness guards); the chosen window is
/// recorded in the estimate.
std::pair<std::size_t, std::size_t> default_fit_range(std::size_t n_scales);

/// Counts occupied anisotropic boxes on the lattice with per-axis pitch
/// delta^{1/H_l} (delta-balls of the anisotropic metric), then fits the
/// covering exponent. Scales must be positive and strictly decreasing.
DimEstimate box_dim_rho(const std::vector<SpacePoint>& points, const HurstVector& h,
                        std::vector<double> scales,
                        std::pair<std::size_t, std::size_t> fit_range = {0, 0});

/// Euclidean counterpart on d-dimensional value clouds with isotropic pitch.
DimEstimate box_dim_euclidean(const std::vector<std::vector<double>>& points,
                              std::vector<double> scales,
                              std::pair<std::size_t, std::size_t> fit_range = {0, 0});

/// Occupied-box count at a single pitch vector (one pitch per coordinate).
std::size_t covering_count(const std::vector<std::vector<double>>& points,
                           std::span<const double> pitch);

}  // namespace fbs
