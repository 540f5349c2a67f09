#include "fbs/gaussian.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

#include "fbs/field_model.hpp"

namespace fbs {

GramMatrix::GramMatrix(std::vector<double> entries_row_major, std::vector<SpacePoint> points,
                       HurstVector h)
    : entries_(std::move(entries_row_major)), points_(std::move(points)), h_(std::move(h)) {
  if (points_.empty()) throw std::invalid_argument("GramMatrix: empty point list");
  if (entries_.size() != points_.size() * points_.size())
    throw std::invalid_argument("GramMatrix: entry count does not match point count");
}

GramMatrix gram(const std::vector<SpacePoint>& points, const HurstVector& h) {
  if (points.empty()) throw std::invalid_argument("gram: empty point list");
  const std::size_t n = points.size();
  std::vector<double> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = covariance(points[i], points[j], h);
      entries[i * n + j] = v;
      entries[j * n + i] = v;
    }
  }
  return GramMatrix(std::move(entries), points, h);
}

namespace {

using ConstMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                Eigen::RowMajor>>;

/// Apply the spectral pseudo-inverse of m to rhs.
Eigen::VectorXd pinv_apply(const GramMatrix& m, const Eigen::VectorXd& rhs) {
  const auto n = static_cast<Eigen::Index>(m.size());
  ConstMap mat(m.entries().data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(mat);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("spd_solve: eigendecomposition failed");
  const Eigen::VectorXd& evals = eig.eigenvalues();
  const double floor = kSpectralCutoff * std::max(evals.cwiseAbs().maxCoeff(), 0.0);
  Eigen::VectorXd inv(n);
  for (Eigen::Index i = 0; i < n; ++i)
    inv[i] = (evals[i] > floor && evals[i] > 0.0) ? 1.0 / evals[i] : 0.0;
  return eig.eigenvectors() * (inv.asDiagonal() * (eig.eigenvectors().transpose() * rhs));
}

}  // namespace

std::vector<double> spd_solve(const GramMatrix& m, std::span<const double> rhs) {
  if (rhs.size() != m.size())
    throw std::invalid_argument("spd_solve: rhs size does not match matrix");
  Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.data(),
                                                        static_cast<Eigen::Index>(rhs.size()));
  Eigen::VectorXd x = pinv_apply(m, b);
  return {x.data(), x.data() + x.size()};
}

double conditional_variance(const LinearFunctional& f,
                            const std::vector<SpacePoint>& conditioning,
                            const HurstVector& h) {
  if (f.points.empty()) throw std::invalid_argument("conditional_variance: empty functional");
  if (f.points.size() != f.weights.size())
    throw std::invalid_argument("conditional_variance: weight/point count mismatch");

  double var_y = 0.0;
  for (std::size_t i = 0; i < f.points.size(); ++i)
    for (std::size_t j = 0; j < f.points.size(); ++j)
      var_y += f.weights[i] * f.weights[j] * covariance(f.points[i], f.points[j], h);
  var_y = std::max(var_y, 0.0);

  if (conditioning.empty()) return var_y;

  const GramMatrix k = gram(conditioning, h);
  Eigen::VectorXd cross(static_cast<Eigen::Index>(conditioning.size()));
  for (std::size_t j = 0; j < conditioning.size(); ++j) {
    double c = 0.0;
    for (std::size_t i = 0; i < f.points.size(); ++i)
      c += f.weights[i] * covariance(f.points[i], conditioning[j], h);
    cross[static_cast<Eigen::Index>(j)] = c;
  }

  Eigen::VectorXd alpha = pinv_apply(k, cross);
  const double explained = cross.dot(alpha);
  return std::clamp(var_y - explained, 0.0, var_y);
}

}  // namespace fbs
