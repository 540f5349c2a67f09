#pragma once

#include <cstddef>
#include <vector>

#include "fbs/types.hpp"

namespace fbs {

inline constexpr std::size_t kDefaultNodeBudget = std::size_t{1} << 22;

/// Tensor grid: one strictly increasing, strictly positive coordinate vector
/// per axis. Nodes are enumerated row-major with axis 0 slowest, matching the
/// Kronecker factor order K_0 (x) K_1 (x) ... of the covariance.
class GridSpec {
public:
  explicit GridSpec(std::vector<std::vector<double>> axes,
                    std::size_t node_budget = kDefaultNodeBudget);

  /// Uniform grid with `points[l]` equally spaced coordinates on
  /// [lo[l], hi[l]] per axis.
  static GridSpec uniform(const std::vector<double>& lo, const std::vector<double>& hi,
                          const std::vector<std::size_t>& points,
                          std::size_t node_budget = kDefaultNodeBudget);

  std::size_t dim() const { return axes_.size(); }
  const std::vector<double>& axis(std::size_t l) const { return axes_[l]; }
  std::size_t axis_size(std::size_t l) const { return axes_[l].size(); }
  std::size_t total_nodes() const { return total_; }

  SpacePoint node(std::size_t flat) const;
  std::size_t flat_index(const std::vector<std::size_t>& multi) const;

  /// Nearest grid node to p (per-axis nearest coordinate). Throws
  /// std::invalid_argument when p lies outside the bounding box. If
  /// `distance` is non-null it receives the Euclidean snapping distance.
  std::size_t nearest_node(const SpacePoint& p, double* distance = nullptr) const;

  bool contains(const SpacePoint& p) const;
  double max_spacing() const;

private:
  std::vector<std::vector<double>> axes_;
  std::size_t total_ = 1;
};

}  // namespace fbs
