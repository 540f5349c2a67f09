#pragma once

#include <string>
#include <vector>

#include "fbs/types.hpp"

namespace fbs {

inline constexpr std::size_t kDefaultPointBudget = std::size_t{1} << 21;

enum class AxisKind { cantor, full, singleton };

AxisKind axis_kind_from_name(const std::string& name);
const char* axis_kind_name(AxisKind k);

/// Self-similar product test set: per axis either the depth-m two-branch
/// Cantor construction with contraction ratio lambda (keep [0,lambda] and
/// [1-lambda, 1]), the full dyadic grid of 2^m points, or a single point.
/// The generated points are the left endpoints of the depth-m cells,
/// translated by `offset` into (0, inf)^N. Box-counting and Hausdorff
/// dimension coincide for these sets, which is why the generators stop here.
struct FractalSet {
  std::vector<AxisKind> axes;
  std::vector<double> ratios;  // per-axis lambda in (0, 1/2], cantor axes only
  int depth = 1;
  SpacePoint offset;

  static FractalSet cantor_product(std::size_t n, double lambda, int depth, SpacePoint offset);
  static FractalSet full_cube(std::size_t n, int depth, SpacePoint offset);
  static FractalSet singleton_product(std::size_t n, SpacePoint offset);

  std::size_t dim() const { return axes.size(); }
  std::size_t axis_point_count(std::size_t l) const;
  std::size_t point_count() const;

  /// Similarity (= box-counting) dimension of the axis-l factor.
  double axis_dimension(std::size_t l) const;
  /// Construction cell size of the axis-l factor at this depth.
  double axis_cell_size(std::size_t l) const;
  /// Anisotropic dimension sum_l axis_dimension(l) / H_l.
  double rho_dimension(const HurstVector& h) const;

  void validate() const;
};

/// Per-axis coordinate lists (offset applied); the Cartesian product of these
/// is the generated point set.
std::vector<double> fractal_axis_points(const FractalSet& spec, std::size_t l);

/// All points of the product set. Throws BudgetError past `budget` points.
std::vector<SpacePoint> generate_fractal(const FractalSet& spec,
                                         std::size_t budget = kDefaultPointBudget);

}  // namespace fbs
