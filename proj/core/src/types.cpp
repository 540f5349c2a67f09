#include "fbs/types.hpp"

#include <stdexcept>
#include <string>

namespace fbs {

HurstVector::HurstVector(std::vector<double> exponents, int d)
    : exponents_(std::move(exponents)), d_(d) {
  if (exponents_.empty()) throw std::invalid_argument("HurstVector: N must be >= 1");
  if (d_ < 1) throw std::invalid_argument("HurstVector: d must be >= 1");
  for (double v : exponents_) {
    if (!(v > 0.0 && v < 1.0))
      throw std::invalid_argument("HurstVector: exponents must lie in the open interval (0,1)");
  }
}

double HurstVector::inverse_sum() const {
  double s = 0.0;
  for (double v : exponents_) s += 1.0 / v;
  return s;
}

void Configuration::validate(std::size_t expected_dim) const {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("Configuration: epsilon must lie in (0,1)");
  auto check_point = [&](const SpacePoint& p, const char* name) {
    if (p.size() != expected_dim)
      throw std::invalid_argument(std::string("Configuration: ") + name + " has wrong dimension");
    for (double x : p) {
      if (!(x >= epsilon && x < 1.0))
        throw std::invalid_argument(std::string("Configuration: ") + name +
                                    " has a coordinate outside [eps, 1)");
    }
  };
  check_point(s, "s");
  check_point(t, "t");
  for (const auto& p : conditioning) check_point(p, "conditioning point");
}

}  // namespace fbs
