#pragma once

#include <cstddef>
#include <vector>

namespace fbs {

/// A point in the parameter space R^N.
using SpacePoint = std::vector<double>;

/// Hurst exponents H = (H_1, ..., H_N), one per parameter axis, together with
/// the state-space dimension d. Immutable after construction.
class HurstVector {
public:
  /// Throws std::invalid_argument unless every exponent lies in (0,1),
  /// N >= 1 and d >= 1.
  HurstVector(std::vector<double> exponents, int d);

  std::size_t n() const { return exponents_.size(); }
  int d() const { return d_; }
  double operator[](std::size_t axis) const { return exponents_[axis]; }
  const std::vector<double>& exponents() const { return exponents_; }

  /// sum_l 1/H_l.
  double inverse_sum() const;

  /// True when d < sum_l 1/H_l, the regime the dimension and occupancy
  /// experiments require.
  bool low_dimension_regime() const { return static_cast<double>(d_) < inverse_sum(); }

private:
  std::vector<double> exponents_;
  int d_;
};

/// One conditioning scenario: target points s, t, conditioning points
/// s^1..s^n and the domain margin epsilon. All points live in [eps, 1)^N.
struct Configuration {
  SpacePoint s;
  SpacePoint t;
  std::vector<SpacePoint> conditioning;
  double epsilon = 0.0;

  std::size_t n() const { return conditioning.size(); }

  /// Throws std::invalid_argument on dimension mismatch, epsilon outside
  /// (0,1) or any coordinate outside [eps, 1).
  void validate(std::size_t expected_dim) const;
};

}  // namespace fbs
