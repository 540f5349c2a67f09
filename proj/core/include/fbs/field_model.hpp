#pragma once

#include <span>
#include <vector>

#include "fbs/types.hpp"

namespace fbs {

/// |x|^e with the x = 0 case short-circuited to 0 (no domain fault for e < 1).
double pow_abs(double x, double e);

/// x^e for x > 0, 0 for x <= 0, with the convention x_+^0 = 1 for x > 0.
double pos_pow(double x, double e);

/// Product-form covariance of the zero-mean scalar sheet:
///   prod_l [ |s_l|^{2H_l} + |t_l|^{2H_l} - |s_l - t_l|^{2H_l} ].
/// Note the scaling: this is 2^N times the convention that puts a factor 1/2
/// in every bracket. All values in this project use this scaling.
double covariance(const SpacePoint& s, const SpacePoint& t, const HurstVector& h);

/// Anisotropic metric rho(s,t) = sum_l |s_l - t_l|^{H_l}.
double rho(const SpacePoint& s, const SpacePoint& t, const HurstVector& h);

/// Per-axis radius r_l = min_j |s_l - s_l^j| + min_j |t_l - s_l^j| over the
/// conditioning set. Throws std::invalid_argument when the set is empty.
std::vector<double> r_vector(const Configuration& c);

/// Moving-average kernel of the integral representation:
///   prod_l { (t_l - u_l)_+^{H_l - 1/2} - (-u_l)_+^{H_l - 1/2} }.
/// Returns NaN when evaluated exactly on a singular locus (u_l == t_l or
/// u_l == 0 with H_l < 1/2); quadrature callers keep nodes off those points.
double kernel_K(std::span<const double> u, const SpacePoint& t, const HurstVector& h);

}  // namespace fbs
