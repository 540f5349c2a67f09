#include "fbs/field_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fbs {

namespace {

void require_dim(std::size_t got, std::size_t want, const char* where) {
  if (got != want) throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

}  // namespace

double pow_abs(double x, double e) {
  if (x == 0.0) return 0.0;
  return std::exp(e * std::log(std::abs(x)));
}

double pos_pow(double x, double e) {
  if (x <= 0.0) return 0.0;
  if (e == 0.0) return 1.0;
  return std::exp(e * std::log(x));
}

double covariance(const SpacePoint& s, const SpacePoint& t, const HurstVector& h) {
  require_dim(s.size(), h.n(), "covariance(s)");
  require_dim(t.size(), h.n(), "covariance(t)");
  double prod = 1.0;
  for (std::size_t l = 0; l < h.n(); ++l) {
    const double two_h = 2.0 * h[l];
    prod *= pow_abs(s[l], two_h) + pow_abs(t[l], two_h) - pow_abs(s[l] - t[l], two_h);
  }
  return prod;
}

double rho(const SpacePoint& s, const SpacePoint& t, const HurstVector& h) {
  require_dim(s.size(), h.n(), "rho(s)");
  require_dim(t.size(), h.n(), "rho(t)");
  double sum = 0.0;
  for (std::size_t l = 0; l < h.n(); ++l) sum += pow_abs(s[l] - t[l], h[l]);
  return sum;
}

std::vector<double> r_vector(const Configuration& c) {
  if (c.conditioning.empty())
    throw std::invalid_argument("r_vector: minimum over an empty conditioning set is undefined");
  const std::size_t dim = c.s.size();
  require_dim(c.t.size(), dim, "r_vector(t)");
  std::vector<double> r(dim);
  for (std::size_t l = 0; l < dim; ++l) {
    double min_s = std::numeric_limits<double>::infinity();
    double min_t = std::numeric_limits<double>::infinity();
    for (const auto& p : c.conditioning) {
      require_dim(p.size(), dim, "r_vector(conditioning)");
      min_s = std::min(min_s, std::abs(c.s[l] - p[l]));
      min_t = std::min(min_t, std::abs(c.t[l] - p[l]));
    }
    r[l] = min_s + min_t;
  }
  return r;
}

double kernel_K(std::span<const double> u, const SpacePoint& t, const HurstVector& h) {
  require_dim(u.size(), h.n(), "kernel_K(u)");
  require_dim(t.size(), h.n(), "kernel_K(t)");
  double prod = 1.0;
  for (std::size_t l = 0; l < h.n(); ++l) {
    const double a = h[l] - 0.5;
    if (a < 0.0 && (u[l] == t[l] || u[l] == 0.0))
      return std::numeric_limits<double>::quiet_NaN();
    prod *= pos_pow(t[l] - u[l], a) - pos_pow(-u[l], a);
  }
  return prod;
}

}  // namespace fbs
