#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fbs/types.hpp"

namespace fbs {

/// Eigenvalues below kSpectralCutoff times the largest one are treated as
/// exactly zero, so conditioning on a redundant set still yields exact zeros
/// downstream instead of noise amplified through a near-singular solve.
inline constexpr double kSpectralCutoff = 1e-10;

/// Dense covariance matrix of the sheet over a finite point set.
class GramMatrix {
public:
  GramMatrix(std::vector<double> entries_row_major, std::vector<SpacePoint> points,
             HurstVector h);

  std::size_t size() const { return points_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * size() + j]; }
  const std::vector<double>& entries() const { return entries_; }
  const std::vector<SpacePoint>& points() const { return points_; }
  const HurstVector& hurst() const { return h_; }

private:
  std::vector<double> entries_;
  std::vector<SpacePoint> points_;
  HurstVector h_;
};

/// entries[i][j] = covariance(points[i], points[j]). Throws on an empty list.
GramMatrix gram(const std::vector<SpacePoint>& points, const HurstVector& h);

/// Linear functional Y = sum_i weights[i] * B0(points[i]) of the scalar sheet.
struct LinearFunctional {
  std::vector<SpacePoint> points;
  std::vector<double> weights;
};

/// Minimum-norm solution of m x = rhs under the spectral-cutoff pseudo-inverse
/// policy; deterministic given inputs.
std::vector<double> spd_solve(const GramMatrix& m, std::span<const double> rhs);

/// Exact Gaussian conditional variance
///   Var(Y | B0(c_1), ..., B0(c_n)) = Var(Y) - c^T K^+ c,
/// the infimum over linear predictors from the conditioning set. Result is
/// clamped to [0, Var(Y)] so cancellation never leaks a negative variance.
double conditional_variance(const LinearFunctional& f,
                            const std::vector<SpacePoint>& conditioning,
                            const HurstVector& h);

}  // namespace fbs
