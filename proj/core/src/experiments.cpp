#include "fbs/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "fbs/errors.hpp"
#include "fbs/simulate.hpp"

namespace fbs {

namespace {

/// Dyadic rho-scales for the base-set dimension estimate, capped below so the
/// per-axis pitch delta^{1/H_l} never outresolves the construction cell.
std::vector<double> rho_scales_for(const FractalSet& set, const HurstVector& h) {
  double cell_cap = 0.0;  // smallest usable delta
  for (std::size_t l = 0; l < set.dim(); ++l) {
    const double cell = set.axis_cell_size(l);
    if (cell > 0.0) cell_cap = std::max(cell_cap, std::pow(cell, h[l]));
  }
  std::vector<double> scales;
  for (int j = 1; j <= 40; ++j) {
    const double delta = std::pow(2.0, -0.5 * j);
    if (delta < cell_cap) break;
    scales.push_back(delta);
  }
  if (scales.size() < 4) throw NumericalError("rho scales: construction too shallow to resolve");
  return scales;
}

std::vector<double> default_image_scales() {
  std::vector<double> scales;
  for (int j = 2; j <= 16; ++j) scales.push_back(std::pow(2.0, -j));
  return scales;
}

/// Fit window that avoids both the plateau (tiny counts) and saturation
/// (counts near the point total); falls back to the standard trim.
std::pair<std::size_t, std::size_t> saturation_fit_range(const std::vector<std::size_t>& counts,
                                                         std::size_t point_count) {
  std::size_t first = counts.size(), last = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const bool usable = counts[i] >= 4 && counts[i] <= point_count / 2;
    if (usable) {
      first = std::min(first, i);
      last = std::max(last, i + 1);
    }
  }
  if (first + 2 <= last) return {first, last};
  return default_fit_range(counts.size());
}

/// Exact field over the shifted product grid; values returned per base point
/// (component-major rows).
std::vector<std::vector<double>> image_values(const FractalSet& set, const HurstVector& h,
                                              const SpacePoint& shift, const SeedSpec& seed) {
  std::vector<std::vector<double>> axes(set.dim());
  for (std::size_t l = 0; l < set.dim(); ++l) {
    axes[l] = fractal_axis_points(set, l);
    for (double& x : axes[l]) x += shift[l];
  }
  const GridSpec grid(std::move(axes));
  const FieldSample field = simulate(grid, h, seed);
  const std::size_t total = grid.total_nodes();
  std::vector<std::vector<double>> values(total);
  for (std::size_t node = 0; node < total; ++node) {
    values[node].resize(static_cast<std::size_t>(h.d()));
    for (int comp = 0; comp < h.d(); ++comp)
      values[node][static_cast<std::size_t>(comp)] = field.value(comp, node);
  }
  return values;
}

SpacePoint draw_shift(const SeedSpec& seed, int shift_index, std::size_t dim) {
  RandomStream rng(seed, static_cast<std::uint64_t>(shift_index), RandomStream::Purpose::shifts);
  SpacePoint t(dim);
  for (double& x : t) x = rng.next_unit();
  return t;
}

void run_parallel(std::size_t total, int workers, const std::function<void(std::size_t)>& work) {
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) work(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (total + static_cast<std::size_t>(workers) - 1) /
                            static_cast<std::size_t>(workers);
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo = static_cast<std::size_t>(w) * chunk;
    const std::size_t hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi]() {
      for (std::size_t i = lo; i < hi; ++i) work(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

ImageExperimentReport image_dimension_experiment(const ImageExperimentPolicy& policy) {
  policy.set.validate();
  if (policy.set.dim() != policy.h.n())
    throw std::invalid_argument("image experiment: set/Hurst dimension mismatch");
  if (!policy.h.low_dimension_regime())
    throw std::invalid_argument(
        "image experiment: requires d < sum 1/H_l; the high-dimension identity "
        "dim B(F) = dim_rho F needs no shift averaging and is out of scope here");
  if (policy.seeds < 1 || policy.shifts < 1)
    throw std::invalid_argument("image experiment: seeds and shifts must be >= 1");

  ImageExperimentReport report;
  report.dim_rho_analytic = policy.set.rho_dimension(policy.h);

  const std::vector<SpacePoint> base = generate_fractal(policy.set);
  const DimEstimate rho_est =
      box_dim_rho(base, policy.h, rho_scales_for(policy.set, policy.h));
  report.dim_rho_estimate = rho_est.slope;
  report.target = std::min(static_cast<double>(policy.h.d()), rho_est.slope);

  const std::vector<double> scales =
      policy.image_scales.empty() ? default_image_scales() : policy.image_scales;

  const std::size_t total = static_cast<std::size_t>(policy.seeds) *
                            static_cast<std::size_t>(policy.shifts);
  report.runs.resize(total);
  run_parallel(total, policy.workers, [&](std::size_t run) {
    const int seed_index = static_cast<int>(run) / policy.shifts;
    const int shift_index = static_cast<int>(run) % policy.shifts;
    const SpacePoint shift = draw_shift(policy.seed, shift_index, policy.set.dim());
    const SeedSpec field_seed{policy.seed.seed,
                              mix64(policy.seed.stream, 0x1000 + run)};
    const auto values = image_values(policy.set, policy.h, shift, field_seed);
    const auto counts_probe = box_dim_euclidean(values, scales);
    const auto window = saturation_fit_range(counts_probe.counts, values.size());
    DimEstimate est = counts_probe;
    const auto [slope, err] = loglog_fit(
        est.scales, std::vector<double>(est.counts.begin(), est.counts.end()), window.first,
        window.second);
    est.slope = slope;
    est.stderr_ = err;
    est.fit_range = window;
    report.runs[run] = ImageRunResult{seed_index, shift_index, shift, std::move(est)};
  });

  double mean = 0.0;
  for (const auto& r : report.runs) mean += r.estimate.slope;
  report.mean_estimate = mean / static_cast<double>(total);
  return report;
}

OccupancyReport occupation_positivity(const OccupancyPolicy& policy) {
  policy.set.validate();
  if (policy.set.dim() != policy.h.n())
    throw std::invalid_argument("occupancy experiment: set/Hurst dimension mismatch");
  if (!policy.h.low_dimension_regime())
    throw std::invalid_argument("occupancy experiment: requires d < sum 1/H_l");
  if (policy.shifts < 1) throw std::invalid_argument("occupancy experiment: shifts >= 1");
  if (policy.resolution_log2.size() < 2)
    throw std::invalid_argument("occupancy experiment: need at least two resolutions");
  for (std::size_t j = 1; j < policy.resolution_log2.size(); ++j)
    if (policy.resolution_log2[j] <= policy.resolution_log2[j - 1])
      throw std::invalid_argument("occupancy experiment: resolutions must refine");

  OccupancyReport report;
  report.dim_rho_analytic = policy.set.rho_dimension(policy.h);
  report.hypothesis_satisfied = report.dim_rho_analytic > static_cast<double>(policy.h.d());
  if (!report.hypothesis_satisfied && !policy.allow_hypothesis_violation)
    throw std::invalid_argument(
        "occupancy experiment: dim_rho(F) <= d violates the positive-measure hypothesis; "
        "set the contrast flag to run it anyway");

  const int d = policy.h.d();
  report.runs.resize(static_cast<std::size_t>(policy.shifts));
  run_parallel(static_cast<std::size_t>(policy.shifts), policy.workers, [&](std::size_t run) {
    const SpacePoint shift = draw_shift(policy.seed, static_cast<int>(run), policy.set.dim());
    const SeedSpec field_seed{policy.seed.seed, mix64(policy.seed.stream, 0x2000 + run)};
    const auto values = image_values(policy.set, policy.h, shift, field_seed);

    OccupancyRun out;
    out.shift_index = static_cast<int>(run);
    out.shift = shift;
    for (int k : policy.resolution_log2) {
      const double pitch_value = std::pow(2.0, -k);
      const std::vector<double> pitch(static_cast<std::size_t>(d), pitch_value);
      const double bins = static_cast<double>(covering_count(values, pitch));
      out.occupancy.push_back(bins * std::pow(pitch_value, d));
    }
    for (std::size_t j = 1; j < out.occupancy.size(); ++j)
      out.step_ratios.push_back(out.occupancy[j] / out.occupancy[j - 1]);
    double window = 1.0;
    for (std::size_t j = 0; j < out.occupancy.size(); ++j)
      window = std::min(window, out.occupancy[j] / out.occupancy.front());
    out.window_ratio = window;
    out.stabilized = window >= 0.5;
    report.runs[run] = std::move(out);
  });

  std::size_t stabilized = 0;
  for (const auto& r : report.runs) stabilized += r.stabilized ? 1 : 0;
  report.fraction_stabilized =
      static_cast<double>(stabilized) / static_cast<double>(policy.shifts);
  return report;
}

}  // namespace fbs
