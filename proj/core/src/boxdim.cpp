#include "fbs/boxdim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "fbs/errors.hpp"

namespace fbs {

LineFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("ols_fit: need at least two matching samples");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols_fit: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() > 2) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - (fit.intercept + fit.slope * x[i]);
      ss_res += r * r;
    }
    fit.stderr_slope = std::sqrt(ss_res / (n - 2.0) / sxx);
  }
  return fit;
}

std::pair<double, double> loglog_fit(std::span<const double> scales,
                                     std::span<const double> counts, std::size_t first,
                                     std::size_t last) {
  if (last > scales.size() || first + 2 > last)
    throw NumericalError("loglog_fit: fewer than two usable scales in the fit window");
  std::vector<double> x, y;
  for (std::size_t i = first; i < last; ++i) {
    if (!(scales[i] > 0.0)) throw std::invalid_argument("loglog_fit: nonpositive scale");
    if (!(counts[i] > 0.0))
      throw NumericalError("loglog_fit: nonpositive count inside the fit window");
    x.push_back(std::log(1.0 / scales[i]));
    y.push_back(std::log(counts[i]));
  }
  const LineFit fit = ols_fit(x, y);
  return {fit.slope, fit.stderr_slope};
}

std::pair<std::size_t, std::size_t> default_fit_range(std::size_t n_scales) {
  if (n_scales >= 8) return {2, n_scales - 2};
  if (n_scales >= 6) return {1, n_scales - 1};
  return {0, n_scales};
}

std::size_t covering_count(const std::vector<std::vector<double>>& points,
                           std::span<const double> pitch) {
  if (points.empty()) return 0;
  const std::size_t dim = points.front().size();
  if (pitch.size() != dim) throw std::invalid_argument("covering_count: pitch dimension mismatch");
  for (double p : pitch)
    if (!(p > 0.0)) throw std::invalid_argument("covering_count: pitch must be positive");

  // Exact duplicate elimination on the integer box indices (sort-unique, no
  // hashing, so counts are deterministic).
  std::vector<std::vector<std::int64_t>> cells(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim)
      throw std::invalid_argument("covering_count: ragged point list");
    std::vector<std::int64_t> idx(dim);
    for (std::size_t l = 0; l < dim; ++l)
      idx[l] = static_cast<std::int64_t>(std::floor(points[i][l] / pitch[l]));
    cells[i] = std::move(idx);
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells.size();
}

namespace {

DimEstimate estimate_from_counts(std::vector<double> scales, std::vector<std::size_t> counts,
                                 std::pair<std::size_t, std::size_t> fit_range) {
  DimEstimate est;
  est.scales = std::move(scales);
  est.counts = std::move(counts);
  est.fit_range = fit_range.second > fit_range.first ? fit_range
                                                     : default_fit_range(est.scales.size());
  std::vector<double> count_values(est.counts.begin(), est.counts.end());
  const auto [slope, err] =
      loglog_fit(est.scales, count_values, est.fit_range.first, est.fit_range.second);
  est.slope = slope;
  est.stderr_ = err;
  return est;
}

void check_scales(const std::vector<double>& scales) {
  if (scales.size() < 2) throw std::invalid_argument("box dimension: need at least two scales");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0)) throw std::invalid_argument("box dimension: scales must be positive");
    if (i > 0 && scales[i] >= scales[i - 1])
      throw std::invalid_argument("box dimension: scales must be strictly decreasing");
  }
}

}  // namespace

DimEstimate box_dim_rho(const std::vector<SpacePoint>& points, const HurstVector& h,
                        std::vector<double> scales,
                        std::pair<std::size_t, std::size_t> fit_range) {
  if (points.empty()) throw std::invalid_argument("box_dim_rho: empty point set");
  check_scales(scales);
  std::vector<std::size_t> counts(scales.size());
  std::vector<double> pitch(h.n());
  for (std::size_t si = 0; si < scales.size(); ++si) {
    for (std::size_t l = 0; l < h.n(); ++l)
      pitch[l] = std::pow(scales[si], 1.0 / h[l]);
    counts[si] = covering_count(points, pitch);
  }
  return estimate_from_counts(std::move(scales), std::move(counts), fit_range);
}

DimEstimate box_dim_euclidean(const std::vector<std::vector<double>>& points,
                              std::vector<double> scales,
                              std::pair<std::size_t, std::size_t> fit_range) {
  if (points.empty()) throw std::invalid_argument("box_dim_euclidean: empty point set");
  check_scales(scales);
  const std::size_t dim = points.front().size();
  std::vector<std::size_t> counts(scales.size());
  for (std::size_t si = 0; si < scales.size(); ++si) {
    const std::vector<double> pitch(dim, scales[si]);
    counts[si] = covering_count(points, pitch);
  }
  return estimate_from_counts(std::move(scales), std::move(counts), fit_range);
}

}  // namespace fbs
