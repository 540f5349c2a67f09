#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "fbs/grid.hpp"
#include "fbs/rng.hpp"
#include "fbs/types.hpp"

namespace fbs {

inline constexpr std::size_t kDirectNodeLimit = 4096;

/// Per-axis ridge added before factorization, relative to the largest
/// diagonal entry of that axis factor.
inline constexpr double kFactorizationRidge = 1e-12;

/// Values of one simulated sheet on a tensor grid. values is component-major:
/// values[c * grid.total_nodes() + node]. Components are drawn from disjoint
/// RNG substreams, so they are independent by construction.
struct FieldSample {
  GridSpec grid;
  HurstVector h;
  SeedSpec seed;
  std::vector<double> values;

  double value(int component, std::size_t node) const {
    return values[static_cast<std::size_t>(component) * grid.total_nodes() + node];
  }
};

/// Exact sample over the grid: each per-axis covariance factor
/// K_l[a,b] = |a|^{2H_l} + |b|^{2H_l} - |a-b|^{2H_l} is Cholesky-factored and
/// the Kronecker product of the factors is applied to one standard-normal
/// vector per component. The Gram matrix of the output over the grid nodes is
/// (x)_l K_l, which equals the sheet covariance entrywise.
FieldSample simulate(const GridSpec& grid, const HurstVector& h, const SeedSpec& seed);

/// Same sampler with caller-provided standard normals (component-major,
/// d * total_nodes values). Test hook for factor-path equivalence.
FieldSample simulate_with_noise(const GridSpec& grid, const HurstVector& h,
                                std::span<const double> normals);

/// Oracle path: factors the full dense Gram matrix over all grid nodes, built
/// entrywise from covariance(). Limited to kDirectNodeLimit nodes.
FieldSample simulate_direct(const GridSpec& grid, const HurstVector& h, const SeedSpec& seed);
FieldSample simulate_direct_with_noise(const GridSpec& grid, const HurstVector& h,
                                       std::span<const double> normals);

/// Field values at the grid nodes nearest to base + shift, one d-vector per
/// base point. Nearest-node snapping, never interpolation; the worst snap
/// distance is recorded so its effect on downstream counts can be judged.
struct ShiftedValues {
  std::vector<std::vector<double>> values;  // [point][component]
  std::vector<std::size_t> nodes;
  double max_snap_distance = 0.0;
};

ShiftedValues evaluate_shifted(const FieldSample& field,
                               const std::vector<SpacePoint>& base_points,
                               const SpacePoint& shift);

/// Self-describing textual container (axes, H, d, seed, RNG id, row-major
/// values at full precision). Layout documented in the README; stable across
/// versions of this project.
void save_field(const FieldSample& field, std::ostream& out);
void save_field(const FieldSample& field, const std::filesystem::path& path);
FieldSample load_field(std::istream& in);
FieldSample load_field(const std::filesystem::path& path);

}  // namespace fbs
