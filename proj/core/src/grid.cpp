#include "fbs/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fbs/errors.hpp"

namespace fbs {

GridSpec::GridSpec(std::vector<std::vector<double>> axes, std::size_t node_budget)
    : axes_(std::move(axes)) {
  if (axes_.empty()) throw std::invalid_argument("GridSpec: no axes");
  for (std::size_t l = 0; l < axes_.size(); ++l) {
    const auto& a = axes_[l];
    if (a.empty()) throw std::invalid_argument("GridSpec: empty axis " + std::to_string(l));
    double prev = 0.0;  // coordinates must be strictly positive
    for (double x : a) {
      if (!(x > prev))
        throw std::invalid_argument("GridSpec: axis " + std::to_string(l) +
                                    " must be strictly increasing and strictly positive");
      prev = x;
    }
    if (total_ > node_budget / a.size())
      throw BudgetError("GridSpec: node budget " + std::to_string(node_budget) + " exceeded");
    total_ *= a.size();
  }
}

GridSpec GridSpec::uniform(const std::vector<double>& lo, const std::vector<double>& hi,
                           const std::vector<std::size_t>& points, std::size_t node_budget) {
  if (lo.size() != hi.size() || lo.size() != points.size())
    throw std::invalid_argument("GridSpec::uniform: per-axis argument sizes differ");
  std::vector<std::vector<double>> axes(lo.size());
  for (std::size_t l = 0; l < lo.size(); ++l) {
    const std::size_t m = points[l];
    if (m == 0) throw std::invalid_argument("GridSpec::uniform: empty axis");
    axes[l].resize(m);
    for (std::size_t i = 0; i < m; ++i)
      axes[l][i] = m == 1 ? lo[l] : lo[l] + (hi[l] - lo[l]) * static_cast<double>(i) /
                                                static_cast<double>(m - 1);
  }
  return GridSpec(std::move(axes), node_budget);
}

SpacePoint GridSpec::node(std::size_t flat) const {
  SpacePoint p(dim());
  for (std::size_t l = dim(); l-- > 0;) {
    const std::size_t m = axes_[l].size();
    p[l] = axes_[l][flat % m];
    flat /= m;
  }
  return p;
}

std::size_t GridSpec::flat_index(const std::vector<std::size_t>& multi) const {
  if (multi.size() != dim()) throw std::invalid_argument("GridSpec: index dimension mismatch");
  std::size_t flat = 0;
  for (std::size_t l = 0; l < dim(); ++l) {
    if (multi[l] >= axes_[l].size()) throw std::invalid_argument("GridSpec: index out of range");
    flat = flat * axes_[l].size() + multi[l];
  }
  return flat;
}

std::size_t GridSpec::nearest_node(const SpacePoint& p, double* distance) const {
  if (p.size() != dim()) throw std::invalid_argument("GridSpec: point dimension mismatch");
  std::size_t flat = 0;
  double dist2 = 0.0;
  for (std::size_t l = 0; l < dim(); ++l) {
    const auto& a = axes_[l];
    if (p[l] < a.front() || p[l] > a.back())
      throw std::invalid_argument("GridSpec: point coordinate " + std::to_string(p[l]) +
                                  " outside axis " + std::to_string(l) + " range [" +
                                  std::to_string(a.front()) + ", " + std::to_string(a.back()) + "]");
    const auto it = std::lower_bound(a.begin(), a.end(), p[l]);
    std::size_t idx = static_cast<std::size_t>(it - a.begin());
    if (idx == a.size()) {
      idx = a.size() - 1;
    } else if (idx > 0 && p[l] - a[idx - 1] <= a[idx] - p[l]) {
      idx -= 1;
    }
    dist2 += (p[l] - a[idx]) * (p[l] - a[idx]);
    flat = flat * a.size() + idx;
  }
  if (distance != nullptr) *distance = std::sqrt(dist2);
  return flat;
}

bool GridSpec::contains(const SpacePoint& p) const {
  if (p.size() != dim()) return false;
  for (std::size_t l = 0; l < dim(); ++l)
    if (p[l] < axes_[l].front() || p[l] > axes_[l].back()) return false;
  return true;
}

double GridSpec::max_spacing() const {
  double spacing = 0.0;
  for (const auto& a : axes_)
    for (std::size_t i = 1; i < a.size(); ++i) spacing = std::max(spacing, a[i] - a[i - 1]);
  return spacing;
}

}  // namespace fbs
